#pragma once

#include "kontakt/jet.hpp"
#include "kontakt/liegroup.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kontakt {

// every corpus/*.kg file, compiled in: (stem, text), sorted by stem
const std::vector<std::pair<std::string, std::string>> &embedded_corpus();

namespace cli {

extern const char *const kToolVersion;

struct ModelChart {
    std::string name;
    ChartPtr chart;
    std::optional<JetChart> jet; // declared with `jet`
};

struct NamedField {
    std::string name, chart;
    VectorField value;
};

struct NamedForm {
    std::string name, chart;
    Form value;
};

struct NamedDist {
    std::string name, chart;
    std::vector<std::string> gens;
    Distribution value;
};

struct NamedAlgebra {
    std::string name;
    LieAlgebraData data;
};

// one `check` line; which options are set depends on the kind
struct CheckDirective {
    std::string kind, target;
    std::string chart; // empty for algebra checks
    int line = 0;

    std::optional<std::string> with;  // compatible
    std::vector<std::string> sym;     // construct, symmetry
    std::vector<int> A;               // invariant, hdw (1-based)
    std::optional<int> max;           // flag
    std::vector<std::vector<Scalar>> points;
    std::optional<std::string> expect_status; // pass, generic-pass, fail, fail(n)
    std::optional<bool> expect_bool;
    std::optional<std::vector<int>> expect_growth;
    std::vector<std::vector<int>> expect_growth_at;
    std::vector<std::string> expect_names; // reeb, kernel: fields; construct: a form; prolong: a field
    std::optional<Expr> factor;
    std::map<int, InvariantForm> expect_d; // mc: label -> d eta^label
    std::optional<int> algebraic_rank, pde_rank, solutions;
    std::vector<Expr> characteristic; // prolong

    std::string name() const { return kind + " " + target; }
};

struct Model {
    std::string name;
    std::vector<ModelChart> charts;
    std::vector<NamedField> fields;
    std::vector<NamedForm> forms;
    std::vector<NamedDist> dists;
    std::vector<NamedAlgebra> algebras;
    std::vector<CheckDirective> checks;

    const ModelChart *chart(const std::string &name) const;
    const NamedField *field(const std::string &name) const;
    const NamedForm *form(const std::string &name) const;
    const NamedDist *dist(const std::string &name) const;
    const NamedAlgebra *algebra(const std::string &name) const;
};

// SyntaxError / UnknownCoordinate / UnknownIdentifier / ArityMismatch, message prefixed "line:col:"
Model parse_model(std::string_view text, std::string name = "model");
// name is the file stem
Model load_model(const std::string &path);
std::string print_model(const Model &m);
bool structurally_equal(const Model &a, const Model &b);

std::string export_algebra(const LieAlgebraData &c);
std::string export_jet_corpus(const JetCorpus &c);

struct RunOptions {
    std::vector<std::pair<std::string, Scalar>> at; // extra sample point for kcontact and flag checks
    std::optional<int> max_flag;
    int jobs = 1;
};

// --at "x=0,t=1/2"; throws SyntaxError
std::vector<std::pair<std::string, Scalar>> parse_assignments(std::string_view text);

struct RankEntry {
    std::string name;
    std::vector<int> values;
    bool list = false; // printed as an array
};

struct CheckRecord {
    std::string model, name, kind;
    std::string status; // pass, generic-pass, fail, error
    std::optional<int> condition;
    std::vector<RankEntry> ranks;
    std::vector<std::pair<std::string, std::string>> witnesses;
    std::optional<std::string> error_code, error_message;
    double seconds = 0;

    bool ok() const { return status == "pass" || status == "generic-pass"; }
};

struct Report {
    std::string model;
    std::vector<CheckRecord> checks;
    double seconds = 0;
    bool ok() const;
};

CheckRecord run_check(const Model &m, const CheckDirective &c, const RunOptions &opts = {});
Report run_model(const Model &m, const RunOptions &opts = {});

enum class Format { Text, Json };
// timing fields only when `timing` is set, so default output is reproducible
std::string emit_report(const Report &r, Format f, bool timing = false);

std::vector<std::string> corpus_names();
// models whose name contains `filter`; the text comes from `dir` when given, else the embedded copies
Report run_corpus(const std::string &filter, const RunOptions &opts = {}, const std::string &dir = "");

} // namespace cli
} // namespace kontakt
