#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "symq/io.hpp"
#include "symq/states.hpp"
#include "test_util.hpp"

using namespace symq;
namespace io = symq::io;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    CliResult res;
    const std::string cmd = std::string(SYMQ_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path tmp_file(const std::string& name) {
    return fs::temp_directory_path() / ("symq_cli_test_" + name);
}

CMatrix mat2(cdouble a, cdouble b, cdouble c, cdouble d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST_CASE("matrix JSON round-trips bit-exactly") {
    Rng rng(1);
    CMatrix m = testutil::random_matrix(rng, 3, 5);
    io::json j = io::matrix_to_json(m);
    // through text, as a file would
    io::json reparsed = io::json::parse(j.dump());
    CMatrix back = io::matrix_from_json(reparsed);
    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix JSON validation") {
    io::json j{{"rows", 2}, {"cols", 2}, {"entries", io::json::array()}};
    CHECK_THROWS_AS(io::matrix_from_json(j), ParseError);
    j["entries"] = io::json::array({io::json{{"re", 1.0}, {"im", 0.0}}});
    CHECK_THROWS_AS(io::matrix_from_json(j), ParseError);
}

TEST_CASE("state JSON round-trips and omits zeros") {
    SymState s = ghz(3, 3, {1.0, cdouble(0, 2), 0.0});
    io::json j = io::state_to_json(s);
    CHECK(j["amplitudes"].size() == 2);  // the zero amplitude is omitted
    SymState back = std::get<SymState>(io::state_from_json(io::json::parse(j.dump())));
    CHECK((back.amps - s.amps).norm() == 0.0);

    FullState f = sym_to_full(excitation(3, 2, 1));
    io::json jf = io::state_to_json(f);
    CHECK(jf["amplitudes"].size() == 3);
    FullState fback = std::get<FullState>(io::state_from_json(io::json::parse(jf.dump())));
    CHECK((fback.amps - f.amps).norm() == 0.0);

    // full states convert through the symmetry check
    SymState converted = io::as_sym(io::state_from_json(jf));
    CHECK((converted.amps - excitation(3, 2, 1).amps).norm() < 1e-12);
}

TEST_CASE("state JSON validation") {
    io::json j{{"kind", "sym"}, {"n", 2}, {"d", 2}};
    CHECK_THROWS(io::state_from_json(j));  // missing amplitudes
    j["amplitudes"] = io::json::array({io::json{{"occ", {1, 0}}, {"re", 1.0}, {"im", 0.0}}});
    CHECK_THROWS_AS(io::state_from_json(j), ParseError);  // occ sums to 1, not 2
    j["amplitudes"] = io::json::array({io::json{{"occ", {1, 1}}, {"re", 1.0}, {"im", 0.0}}});
    CHECK_NOTHROW(io::state_from_json(j));
    io::json bad{{"kind", "neither"}, {"n", 2}, {"d", 2}, {"amplitudes", io::json::array()}};
    CHECK_THROWS_AS(io::state_from_json(bad), ParseError);
}

TEST_CASE("cli: gen output is deterministic and re-readable") {
    CliResult a = run_cli("gen ghz --n 3 --d 2");
    CliResult b = run_cli("gen ghz --n 3 --d 2");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);  // byte-identical
    SymState s = std::get<SymState>(io::state_from_json(io::json::parse(a.out)));
    CHECK((s.amps - ghz(3, 2, {1.0, 1.0}).amps).norm() == 0.0);

    CliResult norm_run = run_cli("gen ghz --n 3 --d 2 --normalize");
    SymState sn = std::get<SymState>(io::state_from_json(io::json::parse(norm_run.out)));
    CHECK(std::abs(norm(sn) - 1.0) < 1e-12);
}

TEST_CASE("cli: classify matches the library and is seed-deterministic") {
    const fs::path state = tmp_file("w32.json");
    CHECK(run_cli("gen excitation --n 3 --d 2 --j 1 --out " + state.string()).exit_code == 0);
    CliResult a = run_cli("classify " + state.string() + " --seed 5");
    CliResult b = run_cli("classify " + state.string() + " --seed 5");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    io::json j = io::json::parse(a.out);
    CHECK(j["generic_signature"] == "{ { 2 } }");
    CHECK(j["stabilizer_dimension"] == 2);
    CHECK(j["uniqueness"]["verdict"] == "Verified");
    fs::remove(state);
}

TEST_CASE("cli: jordan and root work on matrix files") {
    const fs::path mpath = tmp_file("m.json");
    io::save_json(mpath.string(), io::matrix_to_json(mat2(5, 1, 0, 5)));
    CliResult j = run_cli("jordan " + mpath.string());
    CHECK(j.exit_code == 0);
    CHECK(io::json::parse(j.out)["signature"] == "{ { 2 } }");

    io::save_json(mpath.string(), io::matrix_to_json(mat2(4, 0, 0, 9)));
    CliResult r = run_cli("root " + mpath.string() + " --order 2");
    CHECK(r.exit_code == 0);
    CMatrix root = io::matrix_from_json(io::json::parse(r.out));
    CHECK((root - mat2(2, 0, 0, 3)).norm() < 1e-12);

    // the emitted matrix is re-readable by other commands
    const fs::path rpath = tmp_file("root.json");
    CHECK(run_cli("root " + mpath.string() + " --order 2 --out " + rpath.string()).exit_code == 0);
    CliResult j2 = run_cli("jordan " + rpath.string());
    CHECK(io::json::parse(j2.out)["signature"] == "{ { 1 }, { 1 } }");
    fs::remove(mpath);
    fs::remove(rpath);
}

TEST_CASE("cli: check-sym and apply") {
    // non-symmetric full state
    FullState f = full_zero(2, 2);
    f.amps(2) = 1.0;  // |10>
    const fs::path fpath = tmp_file("f.json");
    io::save_json(fpath.string(), io::state_to_json(f));
    CliResult c = run_cli("check-sym " + fpath.string());
    CHECK(c.exit_code == 0);
    CHECK(io::json::parse(c.out)["symmetric"] == false);

    // apply sigma_x to every site of |00>
    SymState zz = sym_zero(2, 2);
    OccBasis basis(2, 2);
    zz.amps(basis.index_of(std::vector<int>{2, 0})) = 1.0;
    const fs::path spath = tmp_file("s.json");
    const fs::path xpath = tmp_file("x.json");
    io::save_json(spath.string(), io::state_to_json(zz));
    io::save_json(xpath.string(), io::matrix_to_json(mat2(0, 1, 1, 0)));
    CliResult a = run_cli("apply " + spath.string() + " " + xpath.string() + " --homogeneous");
    CHECK(a.exit_code == 0);
    SymState out = std::get<SymState>(io::state_from_json(io::json::parse(a.out)));
    CHECK(std::abs(out.amps(basis.index_of(std::vector<int>{0, 2})) - 1.0) < 1e-14);

    // sigma_x at site 1 of the full |00>: |10>
    FullState zz_full = full_zero(2, 2);
    zz_full.amps(0) = 1.0;
    io::save_json(fpath.string(), io::state_to_json(zz_full));
    CliResult site = run_cli("apply " + fpath.string() + " " + xpath.string() + " --site 1");
    CHECK(site.exit_code == 0);
    FullState flipped = std::get<FullState>(io::state_from_json(io::json::parse(site.out)));
    CHECK(std::abs(flipped.amps(2) - 1.0) == 0.0);
    // exactly one of --site / --homogeneous
    CHECK(run_cli("apply " + fpath.string() + " " + xpath.string()).exit_code == 2);
    fs::remove(fpath);
    fs::remove(spath);
    fs::remove(xpath);
}

TEST_CASE("cli: symmetrize with identical matrices returns the input") {
    const fs::path spath = tmp_file("ghz.json");
    const fs::path mpath = tmp_file("a.json");
    CHECK(run_cli("gen ghz --n 3 --d 2 --out " + spath.string()).exit_code == 0);
    io::save_json(mpath.string(), io::matrix_to_json(mat2(1, 0.5, 0, 2)));
    CliResult r = run_cli("symmetrize " + spath.string() + " " + mpath.string() + " " +
                          mpath.string() + " " + mpath.string());
    CHECK(r.exit_code == 0);
    io::json j = io::json::parse(r.out);
    CMatrix a = io::matrix_from_json(j["A"]);
    CHECK((a - mat2(1, 0.5, 0, 2)).norm() < 1e-9);
    CHECK(j["residual"].get<double>() <= 1e-9);
    fs::remove(spath);
    fs::remove(mpath);
}

TEST_CASE("cli: exit codes separate usage, soft and hard failures") {
    CHECK(run_cli("gen ghz").exit_code == 1);               // missing required flags
    CHECK(run_cli("no-such-command").exit_code == 1);       // unknown subcommand
    CHECK(run_cli("classify /no/such/file.json").exit_code == 2);
    CHECK(run_cli("gen excitation --n 3 --d 2 --j 99").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);

    // premise violation in symmetrize: exit 2
    const fs::path spath = tmp_file("zz.json");
    const fs::path xpath = tmp_file("sx.json");
    const fs::path ipath = tmp_file("id.json");
    SymState zz = sym_zero(2, 2);
    OccBasis basis(2, 2);
    zz.amps(basis.index_of(std::vector<int>{2, 0})) = 1.0;
    io::save_json(spath.string(), io::state_to_json(zz));
    io::save_json(xpath.string(), io::matrix_to_json(mat2(0, 1, 1, 0)));
    io::save_json(ipath.string(), io::matrix_to_json(mat2(1, 0, 0, 1)));
    CHECK(run_cli("symmetrize " + spath.string() + " " + xpath.string() + " " + ipath.string())
              .exit_code == 2);
    fs::remove(spath);
    fs::remove(xpath);
    fs::remove(ipath);
}

TEST_CASE("cli: gen covers every family") {
    // unique: |001> + |010> + |100> + |222>
    CliResult u = run_cli("gen unique --n 3 --blocks 2,1");
    CHECK(u.exit_code == 0);
    SymState su = std::get<SymState>(io::state_from_json(io::json::parse(u.out)));
    CHECK((su.amps - unique_representative(3, BlockLayout({2, 1})).amps).norm() == 0.0);

    CliResult m = run_cli("gen multiblock --n 2 --blocks 2,2 --j 1 --weights 1,1");
    CHECK(m.exit_code == 0);
    SymState sm = std::get<SymState>(io::state_from_json(io::json::parse(m.out)));
    CHECK((sm.amps - multi_block_excitation(2, BlockLayout({2, 2}), 1, {1, 1}).amps).norm() == 0.0);

    CliResult e = run_cli("gen excitation --n 3 --d 3 --j 2");
    SymState se = std::get<SymState>(io::state_from_json(io::json::parse(e.out)));
    CHECK((se.amps - excitation(3, 3, 2).amps).norm() == 0.0);

    // complex amplitudes on the ghz generator
    CliResult g = run_cli("gen ghz --n 3 --d 2 --alpha 1,0.5-0.5i");
    SymState sg = std::get<SymState>(io::state_from_json(io::json::parse(g.out)));
    CHECK((sg.amps - ghz(3, 2, {1.0, cdouble(0.5, -0.5)}).amps).norm() == 0.0);
}

TEST_CASE("cli: count matches the library") {
    CliResult r = run_cli("count --d 3");
    CHECK(r.exit_code == 0);
    io::json j = io::json::parse(r.out);
    CHECK(j["signatures"] == 6);
    CHECK(j["unique_classes"] == 3);
}

TEST_CASE("cli: stab emits an orthonormal basis") {
    const fs::path spath = tmp_file("w.json");
    CHECK(run_cli("gen excitation --n 3 --d 2 --j 1 --out " + spath.string()).exit_code == 0);
    CliResult r = run_cli("stab " + spath.string());
    CHECK(r.exit_code == 0);
    io::json j = io::json::parse(r.out);
    CHECK(j["dimension"] == 2);
    REQUIRE(j["basis"].size() == 2);
    CMatrix b0 = io::matrix_from_json(j["basis"][0]);
    CMatrix b1 = io::matrix_from_json(j["basis"][1]);
    CHECK(std::abs(b0.norm() - 1.0) < 1e-12);
    CHECK(std::abs((b0.adjoint() * b1).trace()) < 1e-10);
    fs::remove(spath);
}
