#include "doctest.h"

#include "json.hpp"
#include "kontakt/cli.hpp"
#include "kontakt/error.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace kontakt;
using namespace kontakt::cli;

namespace {

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string corpus_file(const std::string &name) { return std::string(KONTAKT_CORPUS_DIR) + "/" + name + ".kg"; }

template <class F> std::pair<Errc, std::string> error_of(F f) {
    try {
        f();
    } catch (const Error &e) {
        return {e.code(), e.what()};
    }
    return {Errc::Internal, "no error"};
}

const CheckRecord &record(const Report &r, const std::string &name) {
    for (const auto &c : r.checks)
        if (c.name == name) return c;
    FAIL("no record " << name);
    return r.checks.front();
}

int exit_code(const std::string &args) {
    std::string cmd = std::string(KONTAKT_BIN) + " " + args + " > /dev/null 2>&1";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string write_temp(const std::string &name, const std::string &text) {
    std::string path = "kontakt_test_" + name + ".kg";
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

} // namespace

TEST_CASE("the engel model") {
    Model m = load_model(corpus_file("engel"));
    CHECK(m.name == "engel");
    CHECK(m.charts.size() == 1);
    CHECK(m.fields.size() == 4);
    CHECK(m.forms.size() == 1);
    CHECK(m.checks.size() == 3);
    CHECK(m.forms[0].value.channels() == 2);
    CHECK(m.dists[0].gens == std::vector<std::string>{"X1", "X2"});
    Report r = run_model(m);
    CHECK(r.ok());
    CHECK(record(r, "flag E").ranks[0].values == std::vector<int>{2, 3, 4});
}

TEST_CASE("parse errors carry locations and codes") {
    auto [code, msg] = error_of([] { parse_model("chart C coords [x, y]\nvf X = d/dw\n"); });
    CHECK(code == Errc::UnknownCoordinate);
    CHECK(msg.find("2:10") != std::string::npos);

    CHECK(parse_model("").charts.empty());
    CHECK(parse_model("# only a comment\n").checks.empty());

    CHECK(error_of([] { parse_model("chart C coords [x, y\n"); }).first == Errc::SyntaxError);
    CHECK(error_of([] { parse_model("vf X = 1\n"); }).first == Errc::SyntaxError);
    CHECK(error_of([] { parse_model("chart C coords [x]\nvf X = q*d/dx\n"); }).first == Errc::UnknownIdentifier);
    CHECK(error_of([] { parse_model("chart C coords [x, y]\nform f channels 2 = dx\n"); }).first ==
          Errc::ArityMismatch);
    CHECK(error_of([] { parse_model("chart C coords [x, y]\nform f channels 1 = dx ; dy\n"); }).first ==
          Errc::ArityMismatch);
    CHECK(error_of([] { parse_model("chart C coords [x, y]\nform f channels 2 = dx ; dx^dy\n"); }).first ==
          Errc::DegreeError);
    CHECK(error_of([] { parse_model("chart C coords [x, y]\nvf X = d/dx\ndist D = [X, Y]\n"); }).first ==
          Errc::UnknownIdentifier);
    CHECK(error_of([] { parse_model("chart C coords [x]\nvf X = d/dx\ndist D = [X]\ncheck flag D at (1, 2)\n"); })
              .first == Errc::ArityMismatch);
    CHECK(error_of([] { parse_model("chart C coords [x]\nvf X = d/dx\ndist D = [X]\ncheck flag D at (y=1)\n"); })
              .first == Errc::UnknownCoordinate);
    CHECK(error_of([] { parse_model("chart C coords [x]\nvf X = d/dx\ndist D = [X]\ncheck kcontact D\n"); }).first ==
          Errc::UnknownIdentifier);
    CHECK(error_of([] { parse_model("chart C coords [x]\nvf X = d/dx\ndist D = [X]\ncheck flag D sym [X]\n"); })
              .first == Errc::SyntaxError);
    CHECK(error_of([] { parse_model("chart C coords [x]\nvf X = d/dx\ndist D = [X]\ncheck construct D\n"); }).first ==
          Errc::SyntaxError);
    CHECK(error_of([] { parse_model("algebra g dim 2 {\n c[1 3 2] = 1\n}\n"); }).first == Errc::ArityMismatch);
    CHECK(error_of([] { parse_model("algebra g dim 2 {\n c[1 2 2] = x\n}\n"); }).first == Errc::UnknownIdentifier);
    CHECK(error_of([] { parse_model("algebra g dim 2 { }\ncheck invariant g A {3}\n"); }).first ==
          Errc::ArityMismatch);
    CHECK(error_of([] { parse_model("chart C coords [x]\nvf X = exp(x)*d/dx\n"); }).first == Errc::UnknownIdentifier);
    CHECK(error_of([] { parse_model("chart C coords [x, dx]\n"); }).first == Errc::SyntaxError);
    CHECK(error_of([] { parse_model("chart C coords [x, x]\n"); }).first == Errc::SyntaxError);
    CHECK(error_of([] { parse_model("chart C coords [x]\nvf x = d/dx\n"); }).first == Errc::SyntaxError);
    CHECK(error_of([] { parse_model("chart C coords [x]\nvf X = d/dx\ntrans exp(x)\n"); }).first ==
          Errc::SyntaxError);
    CHECK(error_of([] { parse_model("chart C coords [x]\nvf X = d/dx\ncheck prolong X\n"); }).first ==
          Errc::PreconditionViolated);
    CHECK(error_of([] {
              parse_model("jet J base [x] fibre [u]\nvf X = d/dx\ncheck prolong X char (u, u_1)\n");
          }).first == Errc::ArityMismatch);
    CHECK(error_of([] { parse_model("chart A coords [x]\nvf X = d/dx\nchart B coords [y]\nvf Y = X\n"); }).first ==
          Errc::ChartMismatch);
}

TEST_CASE("the expression language") {
    Model m = parse_model("chart C coords [x, y, z]\n"
                          "trans sin(z)\n"
                          "vf X = x d/dy + (1 + y)*d/dz\n"
                          "vf Y = [X, d/dx]\n"
                          "vf Z = -X/2 + sin(z)^2*d/dx\n"
                          "form a channels 1 = d(x*y) ^ dz\n"
                          "form b channels 2 = dz - y*dx ; 0\n"
                          "form c channels 1 = b[1] ^ d(b[1]) + 2*dx^dy^dz\n");
    const ChartPtr &c = m.charts[0].chart;
    auto del = [&](const char *n) { return VectorField::basis(c, c->require(n)); };
    auto dx = [&](const char *n) { return Form::dx(c, c->require(n)); };
    CHECK(m.field("X")->value == c->parse("x") * del("y") + c->parse("1 + y") * del("z"));
    CHECK(m.field("Y")->value == -del("y"));
    CHECK(m.field("Z")->value == c->parse("-x/2") * del("y") - c->parse("(1 + y)/2") * del("z") +
                                     c->parse("sin(z)^2") * del("x"));
    CHECK(m.form("a")->value == c->parse("y") * wedge(dx("x"), dx("z")) + c->parse("x") * wedge(dx("y"), dx("z")));
    CHECK(m.form("b")->value.channel_is_zero(1));
    CHECK(m.form("b")->value.degree() == 1);
    // (dz - y dx) ^ (dx ^ dy) + 2 dx^dy^dz
    CHECK(m.form("c")->value == Expr(3) * wedge(wedge(dx("x"), dx("y")), dx("z")));
    // cos(z) comes with sin(z)
    CHECK(c->declares(GenKind::Cos, 2));
}

TEST_CASE("round trip of every corpus file") {
    for (const auto &name : corpus_names()) {
        CAPTURE(name);
        std::string text = slurp(corpus_file(name));
        Model a = parse_model(text, name);
        std::string printed = print_model(a);
        Model b = parse_model(printed, name);
        CHECK(structurally_equal(a, b));
        CHECK(print_model(b) == printed);
        // the compiled-in copy is the file on disk
        bool found = false;
        for (const auto &[n, t] : embedded_corpus())
            if (n == name) {
                found = true;
                CHECK(t == text);
            }
        CHECK(found);
    }
    CHECK(corpus_names().size() == 11);
    Model e = load_model(corpus_file("engel"));
    Model f = e;
    f.forms[0].value = Expr(2) * f.forms[0].value;
    CHECK_FALSE(structurally_equal(e, f));
}

TEST_CASE("exported algebras and jet corpora match the library") {
    for (const auto &name : corpus_algebra_names()) {
        CAPTURE(name);
        LieAlgebraData lib = corpus_algebra(name);
        Model m = parse_model(export_algebra(lib));
        REQUIRE(m.algebras.size() == 1);
        CHECK(m.algebras[0].data.consts == lib.consts);
        Model file = load_model(corpus_file(name));
        REQUIRE(file.algebra(name));
        CHECK(file.algebra(name)->data.consts == lib.consts);
        CHECK(validate_structure(file.algebra(name)->data));
    }
    for (const auto &name : jet_corpus_names()) {
        CAPTURE(name);
        JetCorpus C = jet_corpus(name);
        Model exported = parse_model(export_jet_corpus(C), name);
        Model file = load_model(corpus_file(name));
        CHECK(structurally_equal(exported, file));
        CHECK(file.checks.size() == C.entries.size());
        REQUIRE(file.charts[0].jet);
        CHECK(file.charts[0].jet->eta == C.chart.eta);
    }
}

TEST_CASE("check directives") {
    Report r6 = run_model(load_model(corpus_file("r6")));
    const CheckRecord &k = record(r6, "kcontact eta");
    CHECK(k.status == "generic-pass");
    CHECK(record(r6, "kcontact eta#2").status == "pass");
    CHECK(record(r6, "kernel eta").status == "pass");

    Report nonint = run_model(load_model(corpus_file("nonintegrable")));
    const CheckRecord &f = record(nonint, "flag D");
    CHECK(f.status == "pass");
    REQUIRE(f.ranks.size() == 3);
    CHECK(f.ranks[0].values == std::vector<int>{2, 3, 4});
    CHECK(f.ranks[1].values == std::vector<int>{2, 3, 3});
    CHECK(f.ranks[2].values == std::vector<int>{2, 3, 4});

    // the bare directive from the counterexample
    Model m = load_model(corpus_file("nonintegrable"));
    m.checks = parse_model(print_model(m) + "check flag D max 4 at (0,0,0,0)\n").checks;
    CheckRecord bare = run_check(m, m.checks.back());
    CHECK(bare.status == "generic-pass");
    CHECK(bare.ranks[1].values == std::vector<int>{2, 3, 3});

    Report conf = run_model(load_model(corpus_file("conformal")));
    CHECK(record(conf, "kcontact zeta").condition == 2);
    CHECK(record(conf, "kcontact zeta").status == "pass");

    Model bad = parse_model("chart R4 coords [x, y, z, p]\ntrans exp(z)\n"
                            "form zeta channels 2 = exp(z)*(dx - y*dp) ; exp(z)*(dz - p*dy)\n"
                            "check kcontact zeta\ncheck reeb zeta\ncheck kcontact zeta expect pass\n",
                            "bad");
    Report br = run_model(bad);
    CHECK_FALSE(br.ok());
    CHECK(br.checks[0].status == "fail");
    CHECK(br.checks[0].condition == 2);
    CHECK(br.checks[1].status == "error");
    CHECK(br.checks[1].error_code == std::string("NotKContact"));
    CHECK(br.checks[2].status == "fail");

    Model wrong = parse_model("chart E coords [x1, x2, x3, x4]\nvf X1 = d/dx4\nvf X2 = d/dx1 + x3*d/dx2 + x4*d/dx3\n"
                              "vf S = d/dx3\ndist E = [X1, X2]\ncheck flag E expect (2, 3, 3)\n"
                              "check symmetry E sym [S]\ncheck symmetry E sym [S] expect false\n"
                              "check involutive E expect false\n");
    Report wr = run_model(wrong);
    CHECK(wr.checks[0].status == "fail");
    CHECK(wr.checks[1].status == "fail");
    CHECK(wr.checks[2].status == "pass");
    CHECK(wr.checks[3].status == "pass");
}

TEST_CASE("extra sample points from the command line") {
    Model m = load_model(corpus_file("r6"));
    RunOptions o;
    o.at = parse_assignments("x=1, t=1/2");
    Report r = run_model(m, o);
    CHECK(record(r, "kcontact eta").status == "pass");
    CHECK(error_of([] { parse_assignments("x=1,"); }).first == Errc::SyntaxError);
    o.at = parse_assignments("w=1");
    CHECK(record(run_model(m, o), "kcontact eta").status == "error");
}

TEST_CASE("reports") {
    Model m = load_model(corpus_file("r6"));
    m.checks.resize(1);
    std::string js = emit_report(run_model(m), Format::Json);
    auto j = nlohmann::json::parse(js);
    CHECK(j["tool_version"] == kToolVersion);
    CHECK(j["model"] == "r6");
    REQUIRE(j["checks"].size() == 1);
    CHECK(j["checks"][0]["status"] == "generic-pass");
    CHECK(j["checks"][0]["ranks"]["kernel"] == 4);
    CHECK(j["checks"][0]["witnesses"]["R1"] == "d/dz");
    CHECK_FALSE(j["checks"][0].contains("seconds"));
    CHECK(nlohmann::json::parse(emit_report(run_model(m), Format::Json, true))["checks"][0].contains("seconds"));

    Report conf = run_model(load_model(corpus_file("conformal")));
    auto jc = nlohmann::json::parse(emit_report(conf, Format::Json));
    CHECK(jc["checks"][1]["condition"] == 2);

    std::string text = emit_report(run_model(m), Format::Text);
    CHECK(text == "model r6\n"
                  "NAME          KIND      STATUS        DETAIL\n"
                  "kcontact eta  kcontact  generic-pass  kernel=4 reeb=2 union=6\n"
                  "1 checks, 1 ok, 0 not ok\n");
}

TEST_CASE("corpus runs are deterministic and order-stable") {
    RunOptions one, four;
    four.jobs = 4;
    Report su3 = run_corpus("su3", one);
    REQUIRE(!su3.checks.empty());
    for (const auto &c : su3.checks) CHECK(c.model == "su3");
    CHECK(su3.ok());
    Report a = run_corpus("", one);
    Report b = run_corpus("", four);
    CHECK(a.ok());
    CHECK(emit_report(a, Format::Json) == emit_report(b, Format::Json));
    CHECK(emit_report(a, Format::Text) == emit_report(b, Format::Text));
    CHECK(run_corpus("no such model").checks.empty());
    CHECK(emit_report(run_corpus("", one, KONTAKT_CORPUS_DIR), Format::Json) == emit_report(a, Format::Json));
}

TEST_CASE("exit codes of the tool") {
    CHECK(exit_code("check " + corpus_file("engel")) == 0);
    CHECK(exit_code("parse " + corpus_file("engel")) == 0);
    CHECK(exit_code("corpus list") == 0);
    CHECK(exit_code("corpus run --filter u2") == 0);
    std::string failing = write_temp("failing", "chart C coords [x, y, z]\nform e channels 1 = dz\ncheck kcontact e\n");
    CHECK(exit_code("check " + failing) == 1);
    std::string broken = write_temp("broken", "chart C coords [x, y\n");
    CHECK(exit_code("check " + broken) == 2);
    CHECK(exit_code("parse " + broken) == 2);
    CHECK(exit_code("check") == 2);
    CHECK(exit_code("frobnicate") == 2);
    CHECK(exit_code("check " + corpus_file("r6") + " --at \"x==1\"") == 2);
    CHECK(exit_code("check no_such_file.kg") == 2);
    std::remove(failing.c_str());
    std::remove(broken.c_str());
}
