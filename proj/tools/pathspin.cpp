// pathspin: command-line harness for the dense-coding simulator.
//
// Subcommands: transmit, channel, nogo, povm, sweep, discriminate.
// Output is JSON (schema "pathspin/1"), CSV for sweeps, or plain text.
// Exit codes: 0 success, 1 contract violation, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathspin/discrimination.hpp"
#include "pathspin/hilbert.hpp"
#include "pathspin/nogo.hpp"
#include "pathspin/optics.hpp"
#include "pathspin/protocol.hpp"

using json = nlohmann::ordered_json;
using namespace pathspin;

namespace {

constexpr const char* kSchemaVersion = "pathspin/1";

json complex_pair(cplx z) { return json::array({z.real(), z.imag()}); }

json state_json(const StateVector& s) {
    json amps = json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) {
        amps.push_back({{"label", s.basis().label(i)}, {"amplitude", complex_pair(s.amp(i))}});
    }
    return amps;
}

json operator_json(const Operator& op) {
    json rows = json::array();
    for (std::size_t i = 0; i < op.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < op.dim(); ++j) row.push_back(complex_pair(op.entry(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json document(const std::string& command, json inputs, json results) {
    return {{"schema_version", kSchemaVersion},
            {"command", command},
            {"inputs", std::move(inputs)},
            {"results", std::move(results)}};
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(output_path);
        if (!out) throw std::runtime_error("cannot open output file: " + output_path);
        out << text << "\n";
    }
}

struct PovmScalars {
    double alpha, beta;
    bool independent;
    double gram_det;
    double completeness_residual;
    double min_eigenvalue;
    bool valid;
    double computed_success;
    double paper_formula_value;
    double idp_opt;
};

PovmScalars povm_scalars(double alpha, double delta) {
    using namespace discrimination;
    SpinPreparation prep = SpinPreparation::from_alpha(alpha, delta);
    PovmSet set = paper_povm(prep);
    PovmReport rep = povm_validate(set);
    StateVector phi1 = phi1_state(prep);
    StateVector phi2 = phi2_state(prep);
    IndependenceResult ind = linear_independence(phi1, phi2);
    double min_ev = 1.0;
    for (const auto& ev : rep.eigenvalues) min_ev = std::min(min_ev, ev[0]);
    double success = 1.0 - formal_expectation(set.effects[2], phi1);
    return {prep.alpha,
            prep.beta,
            ind.independent,
            ind.gram_determinant,
            rep.completeness_residual,
            min_ev,
            rep.overall_valid,
            success,
            paper_success_formula(prep),
            idp_optimum(prep)};
}

json povm_results(double alpha, double delta) {
    using namespace discrimination;
    SpinPreparation prep = SpinPreparation::from_alpha(alpha, delta);
    PovmSet set = paper_povm(prep);
    PovmReport rep = povm_validate(set);
    PovmScalars s = povm_scalars(alpha, delta);
    json effects = json::array();
    for (std::size_t k = 0; k < 3; ++k) {
        effects.push_back({{"label", PovmSet::labels[k]},
                           {"matrix", operator_json(set.effects[k])},
                           {"eigenvalues", {rep.eigenvalues[k][0], rep.eigenvalues[k][1]}},
                           {"positive", rep.is_positive[k]}});
    }
    json out = {{"alpha", s.alpha},
                {"beta", s.beta},
                {"linear_independence", s.independent},
                {"gram_determinant", s.gram_det},
                {"effects", effects},
                {"completeness_residual", s.completeness_residual},
                {"min_eigenvalue", s.min_eigenvalue},
                {"overall_valid", s.valid},
                {"computed_success_expectation", s.computed_success},
                {"paper_formula_value", s.paper_formula_value},
                {"idp_optimum", s.idp_opt}};
    return out;
}

int run_transmit(const std::string& bits, std::uint64_t shots, std::uint64_t seed,
                 const std::string& output_path) {
    using namespace protocol;
    if (bits.size() != 2 || (bits[0] != '0' && bits[0] != '1') ||
        (bits[1] != '0' && bits[1] != '1')) {
        std::cerr << "transmit: --bits must be two characters over {0,1}\n";
        return 2;
    }
    Message msg(bits[0] - '0', bits[1] - '0');
    EncoderSettings settings = encode(msg);
    StateVector state = evolve(settings);
    OutcomeDistribution dist = detection_distribution(state);
    ShotRecord rec = sample_shots(settings, shots, seed);
    Detector winner = argmax_detector(dist);
    Message decoded = decode(winner);

    json probabilities, counts;
    for (std::size_t i = 0; i < kDetectors.size(); ++i) {
        probabilities[to_string(kDetectors[i])] = dist[i];
        counts[to_string(kDetectors[i])] = rec.counts[i];
    }
    json doc = document(
        "transmit",
        {{"bits", bits}, {"shots", shots}, {"seed", seed}},
        {{"settings", {{"name", to_string(settings.name)},
                       {"delta", settings.delta},
                       {"phi", settings.phi}}},
         {"state", state_json(state)},
         {"probabilities", probabilities},
         {"counts", counts},
         {"certain_detector", to_string(winner)},
         {"decoded", decoded.str()},
         {"round_trip_success", decoded == msg}});
    emit(doc.dump(2), output_path);
    return decoded == msg ? 0 : 1;
}

int run_channel(const std::string& output_path) {
    using namespace protocol;
    ChannelMatrix m = channel_matrix();
    double info = mutual_information(m, uniform_prior());
    json rows = json::array();
    bool permutation = true;
    for (const auto& row : m) {
        json r = json::array();
        int ones = 0;
        for (double p : row) {
            r.push_back(p);
            if (std::abs(p - 1.0) <= 1e-12) ++ones;
            else if (std::abs(p) > 1e-12) permutation = false;
        }
        if (ones != 1) permutation = false;
        rows.push_back(r);
    }
    json doc = document("channel", json::object(),
                        {{"channel_matrix", rows},
                         {"is_permutation", permutation},
                         {"mutual_information_bits", info}});
    emit(doc.dump(2), output_path);
    return permutation && std::abs(info - 2.0) <= 1e-9 ? 0 : 1;
}

int run_nogo(int grid_steps, double tol, const std::string& output_path) {
    using namespace nogo;
    ScanReport rep = scan(grid_steps, tol);
    json witnesses = json::array();
    bool has_phi_pi_witness = false;
    for (const auto& q : rep.sample_witnesses) {
        double dphi = canonical_phase(q.phi2 - q.phi1);
        if (std::abs(dphi - kPi) <= 1e-9) has_phi_pi_witness = true;
        witnesses.push_back({{"eta1", q.eta1}, {"eta2", q.eta2},
                             {"phi1", q.phi1}, {"phi2", q.phi2},
                             {"phi2_minus_phi1", dphi}});
    }
    json doc = document(
        "nogo",
        {{"grid_steps", grid_steps}, {"tol", tol}},
        {{"quadruples_examined", rep.quadruples_examined},
         {"max_subset_size", rep.overall_max},
         {"size2_count", rep.size2_count},
         {"sample_witnesses", witnesses},
         {"witness_with_phi_difference_pi", has_phi_pi_witness},
         {"constrained_points", rep.constrained_points},
         {"min_third_overlap_at_constrained_points", rep.min_third_overlap},
         {"third_overlap_maximal", rep.third_overlap_maximal}});
    emit(doc.dump(2), output_path);
    return rep.overall_max <= 2 ? 0 : 1;
}

int run_povm(double alpha, double delta, const std::string& output_path) {
    json doc = document("povm", {{"alpha", alpha}, {"delta", delta}},
                        povm_results(alpha, delta));
    emit(doc.dump(2), output_path);
    return 0;
}

int run_sweep(double from, double to, int steps, const std::string& format,
              const std::string& output_path) {
    if (steps < 2 || !(from < to)) {
        std::cerr << "sweep: require steps >= 2 and from < to\n";
        return 2;
    }
    static const char* kHeader =
        "alpha,beta,linear_independence,gram_determinant,completeness_residual,"
        "min_eigenvalue,overall_valid,computed_success_expectation,"
        "paper_formula_value,idp_optimum";
    std::ostringstream csv;
    csv << kHeader;
    json rows = json::array();
    for (int i = 0; i < steps; ++i) {
        double alpha = from + (to - from) * i / (steps - 1);
        PovmScalars s = povm_scalars(alpha, 0.0);
        csv << "\n";
        char buf[512];
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%d,%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g",
                      s.alpha, s.beta, s.independent ? 1 : 0, s.gram_det,
                      s.completeness_residual, s.min_eigenvalue, s.valid ? 1 : 0,
                      s.computed_success, s.paper_formula_value, s.idp_opt);
        csv << buf;
        rows.push_back({{"alpha", s.alpha},
                        {"beta", s.beta},
                        {"linear_independence", s.independent},
                        {"gram_determinant", s.gram_det},
                        {"completeness_residual", s.completeness_residual},
                        {"min_eigenvalue", s.min_eigenvalue},
                        {"overall_valid", s.valid},
                        {"computed_success_expectation", s.computed_success},
                        {"paper_formula_value", s.paper_formula_value},
                        {"idp_optimum", s.idp_opt}});
    }
    if (format == "csv") {
        emit(csv.str(), output_path);
    } else {
        json doc = document("sweep",
                            {{"param", "alpha"}, {"from", from}, {"to", to}, {"steps", steps}},
                            {{"rows", rows}});
        emit(doc.dump(2), output_path);
    }
    return 0;
}

int run_discriminate(double alpha, const std::string& bits, std::uint64_t shots,
                     std::uint64_t seed, const std::string& output_path) {
    using namespace discrimination;
    using namespace protocol;
    if (bits.size() != 2 || (bits[0] != '0' && bits[0] != '1') ||
        (bits[1] != '0' && bits[1] != '1')) {
        std::cerr << "discriminate: --bits must be two characters over {0,1}\n";
        return 2;
    }
    Message msg(bits[0] - '0', bits[1] - '0');
    SpinPreparation prep = SpinPreparation::from_alpha(alpha, 0.0);
    PovmSet set = paper_povm(prep);
    PovmReport rep = povm_validate(set);
    json inputs = {{"alpha", alpha}, {"bits", bits}, {"shots", shots}, {"seed", seed}};
    if (!rep.overall_valid) {
        double min_ev = 1.0;
        for (const auto& ev : rep.eigenvalues) min_ev = std::min(min_ev, ev[0]);
        json doc = document("discriminate", inputs,
                            {{"error", "invalid POVM: sampling undefined"},
                             {"completeness_residual", rep.completeness_residual},
                             {"min_eigenvalue", min_ev},
                             {"overall_valid", false}});
        emit(doc.dump(2), output_path);
        return 1;
    }
    DiscriminationShotRecord rec = sample_discrimination(set, prep, msg, shots, seed);
    json counts;
    const char* paths[2] = {"psi3", "psi4"};
    for (int p = 0; p < 2; ++p) {
        json per;
        for (int k = 0; k < 3; ++k) per[PovmSet::labels[k]] = rec.counts[p][k];
        counts[paths[p]] = per;
    }
    json doc = document("discriminate", inputs,
                        {{"overall_valid", true}, {"counts", counts}});
    emit(doc.dump(2), output_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Path-spin dense coding simulator"};
    app.require_subcommand(1);

    std::string bits = "00", format = "json", output_path;
    std::uint64_t shots = 1000, seed = 0;
    int grid_steps = 24, sweep_steps = 6;
    double tol = 1e-9, alpha = 1.0 / std::sqrt(2.0), delta = 0.0;
    double from = 0.5, to = 1.0;

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--output", output_path, "write output to a file instead of stdout");
    };

    auto* transmit = app.add_subcommand("transmit", "deterministic 2-bit round trip");
    transmit->add_option("--bits", bits, "two bits, e.g. 01")->required();
    transmit->add_option("--shots", shots)->check(CLI::PositiveNumber);
    transmit->add_option("--seed", seed);
    add_output(transmit);

    auto* channel = app.add_subcommand("channel", "channel matrix and mutual information");
    add_output(channel);

    auto* nogo_cmd = app.add_subcommand("nogo", "three-beam-splitter orthogonality scan");
    nogo_cmd->add_option("--grid-steps", grid_steps)->check(CLI::Range(8, 64));
    nogo_cmd->add_option("--tol", tol)->check(CLI::PositiveNumber);
    add_output(nogo_cmd);

    auto* povm = app.add_subcommand("povm", "POVM diagnostics for one preparation");
    povm->add_option("--alpha", alpha)->check(CLI::Range(0.0, 1.0));
    povm->add_option("--delta", delta);
    add_output(povm);

    auto* sweep = app.add_subcommand("sweep", "POVM scalar diagnostics over an alpha range");
    sweep->add_option("--from", from)->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--to", to)->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--steps", sweep_steps);
    add_output(sweep);

    auto* discriminate = app.add_subcommand("discriminate",
                                            "sampled probabilistic discrimination");
    discriminate->add_option("--alpha", alpha)->check(CLI::Range(0.0, 1.0));
    discriminate->add_option("--bits", bits);
    discriminate->add_option("--shots", shots)->check(CLI::PositiveNumber);
    discriminate->add_option("--seed", seed);
    add_output(discriminate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (transmit->parsed()) return run_transmit(bits, shots, seed, output_path);
        if (channel->parsed()) return run_channel(output_path);
        if (nogo_cmd->parsed()) return run_nogo(grid_steps, tol, output_path);
        if (povm->parsed()) return run_povm(alpha, delta, output_path);
        if (sweep->parsed()) return run_sweep(from, to, sweep_steps, format, output_path);
        if (discriminate->parsed())
            return run_discriminate(alpha, bits, shots, seed, output_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
