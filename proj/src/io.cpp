#include "symq/io.hpp"

#include <cmath>
#include <fstream>

namespace symq::io {

namespace {

double finite_number(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string("expected a number for ") + what, 0);
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(std::string("non-finite value for ") + what, 0);
    return v;
}

json complex_entry(cdouble z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cdouble complex_from(const json& j) {
    return {finite_number(j.at("re"), "re"), finite_number(j.at("im"), "im")};
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
    json entries = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(complex_entry(m(r, c)));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

CMatrix matrix_from_json(const json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows < 1 || cols < 1 || rows > 4096 || cols > 4096) {
        throw ParseError("matrix dimensions out of range", 0);
    }
    const json& entries = j.at("entries");
    if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != rows * cols) {
        throw ParseError("matrix entries must hold rows*cols values", 0);
    }
    CMatrix m(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from(entries[static_cast<std::size_t>(k++)]);
    }
    return m;
}

json state_to_json(const SymState& s) {
    OccBasis basis(s.n, s.d);
    json amps = json::array();
    for (std::int64_t i = 0; i < basis.size(); ++i) {
        if (s.amps(i) == cdouble{0.0}) continue;
        auto occ = basis.occ(i);
        json entry = complex_entry(s.amps(i));
        entry["occ"] = std::vector<int>(occ.begin(), occ.end());
        amps.push_back(std::move(entry));
    }
    return json{{"kind", "sym"}, {"n", s.n}, {"d", s.d}, {"amplitudes", std::move(amps)}};
}

json state_to_json(const FullState& f) {
    json amps = json::array();
    for (std::int64_t i = 0; i < f.amps.size(); ++i) {
        if (f.amps(i) == cdouble{0.0}) continue;
        std::vector<int> idx(static_cast<std::size_t>(f.n));
        std::int64_t rest = i;
        for (int k = f.n - 1; k >= 0; --k) {
            idx[static_cast<std::size_t>(k)] = static_cast<int>(rest % f.d);
            rest /= f.d;
        }
        json entry = complex_entry(f.amps(i));
        entry["idx"] = std::move(idx);
        amps.push_back(std::move(entry));
    }
    return json{{"kind", "full"}, {"n", f.n}, {"d", f.d}, {"amplitudes", std::move(amps)}};
}

AnyState state_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const int n = j.at("n").get<int>();
    const int d = j.at("d").get<int>();
    const json& amps = j.at("amplitudes");
    if (!amps.is_array()) throw ParseError("amplitudes must be an array", 0);
    if (kind == "sym") {
        SymState s = sym_zero(n, d);
        OccBasis basis(n, d);
        for (const json& entry : amps) {
            const json& jocc = entry.at("occ");
            if (!jocc.is_array() || static_cast<int>(jocc.size()) != d) {
                throw ParseError("occ must list d occupation numbers", 0);
            }
            std::vector<int> occ;
            int total = 0;
            for (const json& v : jocc) {
                occ.push_back(v.get<int>());
                if (occ.back() < 0) throw ParseError("occupation numbers must be >= 0", 0);
                total += occ.back();
            }
            if (total != n) throw ParseError("occupation numbers must add up to n", 0);
            s.amps(basis.index_of(occ)) = complex_from(entry);
        }
        return s;
    }
    if (kind == "full") {
        FullState f = full_zero(n, d);
        for (const json& entry : amps) {
            const json& jidx = entry.at("idx");
            if (!jidx.is_array() || static_cast<int>(jidx.size()) != n) {
                throw ParseError("idx must list n site indices", 0);
            }
            std::int64_t flat = 0;
            for (const json& v : jidx) {
                const int i = v.get<int>();
                if (i < 0 || i >= d) throw ParseError("site index out of range", 0);
                flat = flat * d + i;
            }
            f.amps(flat) = complex_from(entry);
        }
        return f;
    }
    throw ParseError("kind must be \"sym\" or \"full\"", 0);
}

SymState as_sym(const AnyState& state, double tol) {
    if (std::holds_alternative<SymState>(state)) return std::get<SymState>(state);
    return full_to_sym(std::get<FullState>(state), tol);
}

json report_to_json(const ClassReport& r) {
    json sampled = json::array();
    for (const auto& sc : r.sampled) {
        sampled.push_back(json{{"signature", signature_to_string(sc.signature)}, {"count", sc.count}});
    }
    json uniq{{"verdict", to_string(r.uniqueness.verdict)}, {"detail", r.uniqueness.detail}};
    if (r.uniqueness.witness) uniq["witness"] = matrix_to_json(*r.uniqueness.witness);
    if (r.uniqueness.witness_signature) {
        uniq["witness_signature"] = signature_to_string(*r.uniqueness.witness_signature);
    }
    json out{{"n", r.n},
             {"d", r.d},
             {"stabilizer_dimension", r.stabilizer_dimension},
             {"generic_signature", signature_to_string(r.generic)},
             {"sampled_signatures", std::move(sampled)},
             {"uniqueness", std::move(uniq)},
             {"samples", r.samples},
             {"seed", r.seed},
             {"tol", r.tol}};
    if (r.lu_invariant) out["lu_invariant"] = *r.lu_invariant;
    if (!r.warning.empty()) out["warning"] = r.warning;
    return out;
}

json space_to_json(const StabilizerSpace& s) {
    json basis = json::array();
    for (const CMatrix& b : s.basis) basis.push_back(matrix_to_json(b));
    return json{{"n", s.n}, {"d", s.d}, {"dimension", s.dimension()}, {"tol", s.tol},
                {"basis", std::move(basis)}};
}

json symmetrization_to_json(const SymmetrizationResult& r) {
    return json{{"A", matrix_to_json(r.a)},
                {"S", matrix_to_json(r.root)},
                {"M", matrix_to_json(r.product)},
                {"residual", r.residual},
                {"unitary", r.unitary}};
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what(),
                         static_cast<std::size_t>(e.byte));
    }
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw Error("failed writing " + path);
}

}  // namespace symq::io
