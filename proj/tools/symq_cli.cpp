#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "symq/io.hpp"
#include "symq/states.hpp"

namespace {

using symq::cdouble;
using symq::CMatrix;
using symq::SymState;
namespace io = symq::io;

struct GlobalOpts {
    double tol = 1e-9;
    double cluster_tol = 1e-7;
    int samples = 16;
    std::uint64_t seed = 0;
    bool normalize = false;
    std::string out;
};

void add_global_flags(CLI::App* cmd, GlobalOpts& g) {
    cmd->add_option("--tol", g.tol, "numerical tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--cluster-tol", g.cluster_tol, "eigenvalue clustering tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--samples", g.samples, "number of random stabilizer samples")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", g.seed, "random seed");
    cmd->add_flag("--normalize", g.normalize, "normalize generated states");
    cmd->add_option("--out", g.out, "write the JSON result to this file instead of stdout");
}

void emit(const GlobalOpts& g, const io::json& j) {
    if (g.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        io::save_json(g.out, j);
    }
}

// Accepts "1", "-2.5", "1+2i", "-1e-3-4i", "i", "-i", "3j".
cdouble parse_complex(std::string tok) {
    std::erase_if(tok, [](char c) { return c == ' '; });
    if (tok.empty()) throw symq::ParseError("empty complex literal", 0);
    const bool has_i = tok.back() == 'i' || tok.back() == 'j';
    if (!has_i) return {std::stod(tok), 0.0};
    tok.pop_back();
    if (tok.empty() || tok == "+") return {0.0, 1.0};
    if (tok == "-") return {0.0, -1.0};
    // split at the last +/- that is not a leading sign or exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t k = tok.size(); k-- > 1;) {
        const char c = tok[k];
        if ((c == '+' || c == '-') && tok[k - 1] != 'e' && tok[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, std::stod(tok)};
    const std::string re = tok.substr(0, split);
    std::string im = tok.substr(split);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return {std::stod(re), std::stod(im)};
}

SymState maybe_normalized(SymState s, bool normalize) {
    if (normalize) {
        const double nrm = symq::norm(s);
        if (nrm == 0.0) throw symq::ZeroState();
        s.amps /= nrm;
    }
    return s;
}

SymState load_sym(const std::string& path, double tol) {
    return io::as_sym(io::state_from_json(io::load_json(path)), tol);
}

int run(int argc, char** argv) {
    CLI::App app{"permutation-symmetric qudit states: stabilizers, Jordan invariants, "
                 "class representatives, homogeneous-operation synthesis"};
    app.require_subcommand(1);
    GlobalOpts g;

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a representative state");
    gen->require_subcommand(1);
    int n = 3, d = 2, j = 0;
    std::string alpha_text;
    std::vector<int> blocks, weights;

    auto* gen_ghz = gen->add_subcommand("ghz", "alpha_0 |0..0> + ... + alpha_{d-1} |d-1..d-1>");
    gen_ghz->add_option("--n", n, "particles")->required();
    gen_ghz->add_option("--d", d, "levels per particle")->required();
    gen_ghz->add_option("--alpha", alpha_text, "comma-separated amplitudes (default: all 1)");
    add_global_flags(gen_ghz, g);

    auto* gen_exc = gen->add_subcommand("excitation", "E_j: indices summing to j");
    gen_exc->add_option("--n", n, "particles")->required();
    gen_exc->add_option("--d", d, "levels per particle")->required();
    gen_exc->add_option("--j", j, "total excitation")->required();
    add_global_flags(gen_exc, g);

    auto* gen_uni = gen->add_subcommand("unique", "direct sum of per-block top excitations");
    gen_uni->add_option("--n", n, "particles")->required();
    gen_uni->add_option("--blocks", blocks, "block sizes, descending")->required()->delimiter(',');
    add_global_flags(gen_uni, g);

    auto* gen_multi = gen->add_subcommand("multiblock", "excitation j spread over blocks");
    gen_multi->add_option("--n", n, "particles")->required();
    gen_multi->add_option("--blocks", blocks, "block sizes, descending")->required()->delimiter(',');
    gen_multi->add_option("--j", j, "total excitation")->required();
    gen_multi->add_option("--weights", weights, "particles per block")->required()->delimiter(',');
    add_global_flags(gen_multi, g);

    // ---- classify ----
    auto* classify_cmd = app.add_subcommand("classify", "stabilizer-based class report");
    std::string state_path;
    classify_cmd->add_option("state", state_path, "state JSON file")->required();
    add_global_flags(classify_cmd, g);

    // ---- stab ----
    auto* stab_cmd = app.add_subcommand("stab", "basis of the single-particle stabilizer space");
    stab_cmd->add_option("state", state_path, "state JSON file")->required();
    add_global_flags(stab_cmd, g);

    // ---- symmetrize ----
    auto* symm_cmd = app.add_subcommand("symmetrize",
                                        "one homogeneous operation from per-particle operations");
    std::vector<std::string> matrix_paths;
    symm_cmd->add_option("state", state_path, "state JSON file")->required();
    symm_cmd->add_option("matrices", matrix_paths, "n matrix JSON files")->required();
    add_global_flags(symm_cmd, g);

    // ---- jordan ----
    auto* jordan_cmd = app.add_subcommand("jordan", "Jordan block structure of a matrix");
    std::string matrix_path;
    jordan_cmd->add_option("matrix", matrix_path, "matrix JSON file")->required();
    add_global_flags(jordan_cmd, g);

    // ---- root ----
    auto* root_cmd = app.add_subcommand("root", "polynomial n-th root of a matrix");
    int order = 2;
    std::vector<int> branch;
    root_cmd->add_option("matrix", matrix_path, "matrix JSON file")->required();
    root_cmd->add_option("--order", order, "root order")->required()->check(CLI::PositiveNumber);
    root_cmd->add_option("--branch", branch, "per-cluster branch indices")->delimiter(',');
    add_global_flags(root_cmd, g);

    // ---- check-sym ----
    auto* check_cmd = app.add_subcommand("check-sym", "permutation-symmetry check");
    check_cmd->add_option("state", state_path, "state JSON file")->required();
    add_global_flags(check_cmd, g);

    // ---- apply ----
    auto* apply_cmd = app.add_subcommand("apply", "apply a matrix to a state");
    int site = 0;
    bool homogeneous = false;
    apply_cmd->add_option("state", state_path, "state JSON file")->required();
    apply_cmd->add_option("matrix", matrix_path, "matrix JSON file")->required();
    apply_cmd->add_option("--site", site, "apply at this site only (full states, 1-based)");
    apply_cmd->add_flag("--homogeneous", homogeneous, "apply to every site");
    add_global_flags(apply_cmd, g);

    // ---- count ----
    auto* count_cmd = app.add_subcommand("count", "Jordan structure counts for dimension d");
    count_cmd->add_option("--d", d, "one-particle dimension")->required();
    add_global_flags(count_cmd, g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // exit 1 on usage errors
    }

    if (gen->parsed()) {
        SymState s;
        if (gen_ghz->parsed()) {
            std::vector<cdouble> alpha;
            if (alpha_text.empty()) {
                alpha.assign(static_cast<std::size_t>(d), 1.0);
            } else {
                std::stringstream ss(alpha_text);
                std::string tok;
                while (std::getline(ss, tok, ',')) alpha.push_back(parse_complex(tok));
            }
            s = symq::ghz(n, d, alpha);
        } else if (gen_exc->parsed()) {
            s = symq::excitation(n, d, j);
        } else if (gen_uni->parsed()) {
            s = symq::unique_representative(n, symq::BlockLayout(blocks));
        } else {
            s = symq::multi_block_excitation(n, symq::BlockLayout(blocks), j, weights);
        }
        emit(g, io::state_to_json(maybe_normalized(std::move(s), g.normalize)));
        return 0;
    }
    if (classify_cmd->parsed()) {
        SymState s = load_sym(state_path, g.tol);
        emit(g, io::report_to_json(symq::classify(s, g.samples, g.seed, g.tol, g.cluster_tol)));
        return 0;
    }
    if (stab_cmd->parsed()) {
        SymState s = load_sym(state_path, g.tol);
        emit(g, io::space_to_json(symq::stabilizer_space(s, g.tol)));
        return 0;
    }
    if (symm_cmd->parsed()) {
        SymState s = load_sym(state_path, g.tol);
        std::vector<CMatrix> ops;
        for (const auto& p : matrix_paths) ops.push_back(io::matrix_from_json(io::load_json(p)));
        emit(g, io::symmetrization_to_json(symq::symmetrize_locals(s, ops, g.tol)));
        return 0;
    }
    if (jordan_cmd->parsed()) {
        CMatrix m = io::matrix_from_json(io::load_json(matrix_path));
        symq::JordanStructureReport rep = symq::jordan_signature(m, g.tol, g.cluster_tol);
        io::json groups = io::json::array();
        for (const auto& grp : rep.groups) {
            groups.push_back(io::json{{"eigenvalue", {{"re", grp.eigenvalue.real()}, {"im", grp.eigenvalue.imag()}}},
                                      {"block_sizes", grp.block_sizes},
                                      {"rank_sequence", grp.rank_sequence}});
        }
        emit(g, io::json{{"signature", symq::signature_to_string(rep.signature)},
                         {"groups", std::move(groups)},
                         {"repaired", rep.repaired}});
        return 0;
    }
    if (root_cmd->parsed()) {
        CMatrix m = io::matrix_from_json(io::load_json(matrix_path));
        emit(g, io::matrix_to_json(symq::nth_root_matrix(m, order, branch, g.cluster_tol, g.tol)));
        return 0;
    }
    if (check_cmd->parsed()) {
        io::AnyState st = io::state_from_json(io::load_json(state_path));
        double residual = 0.0;
        if (std::holds_alternative<symq::FullState>(st)) {
            residual = symq::symmetry_residual(std::get<symq::FullState>(st));
        }
        emit(g, io::json{{"symmetric", residual <= g.tol}, {"residual", residual}});
        return 0;
    }
    if (apply_cmd->parsed()) {
        io::AnyState st = io::state_from_json(io::load_json(state_path));
        CMatrix m = io::matrix_from_json(io::load_json(matrix_path));
        if (homogeneous == (site > 0)) {
            throw symq::InvalidInput("apply: pass exactly one of --site or --homogeneous");
        }
        if (site > 0) {
            if (!std::holds_alternative<symq::FullState>(st)) {
                throw symq::InvalidInput("apply --site needs a full-tensor state file");
            }
            emit(g, io::state_to_json(symq::apply_site(std::get<symq::FullState>(st), m, site)));
        } else if (std::holds_alternative<SymState>(st)) {
            emit(g, io::state_to_json(symq::apply_homogeneous(std::get<SymState>(st), m)));
        } else {
            symq::FullState f = std::get<symq::FullState>(st);
            for (int k = 1; k <= f.n; ++k) f = symq::apply_site(f, m, k);
            emit(g, io::state_to_json(f));
        }
        return 0;
    }
    if (count_cmd->parsed()) {
        emit(g, io::json{{"signatures", symq::count_signatures(d)},
                         {"unique_classes", symq::count_unique_classes(d)}});
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const symq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
