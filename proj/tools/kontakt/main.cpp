#include "kontakt/cli.hpp"
#include "kontakt/error.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace kontakt;
using namespace kontakt::cli;

namespace {

struct OutputOptions {
    std::string json_path;
    std::string format = "text";
    bool timing = false;
};

void add_output_options(CLI::App *cmd, OutputOptions &o) {
    cmd->add_option("--json", o.json_path, "write the JSON report to PATH (- for stdout)");
    cmd->add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--timing", o.timing, "include timings (breaks byte-identical output)");
}

int emit(const Report &rep, const OutputOptions &o) {
    if (!o.json_path.empty()) {
        std::string j = emit_report(rep, Format::Json, o.timing);
        if (o.json_path == "-") {
            std::cout << j;
        } else {
            std::ofstream out(o.json_path, std::ios::binary);
            if (!out) {
                std::cerr << "kontakt: cannot write " << o.json_path << "\n";
                return 2;
            }
            out << j;
        }
    }
    if (o.json_path != "-") std::cout << emit_report(rep, o.format == "json" ? Format::Json : Format::Text, o.timing);
    return rep.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"kontakt: exact checks for k-contact structures"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string model_path, at, filter, dir, export_what, export_name;
    int max_flag = 0, jobs = 1;
    bool print = false;
    OutputOptions out;

    auto *check = app.add_subcommand("check", "run the check directives of a model file");
    check->add_option("model", model_path, "model file (.kg)")->required();
    check->add_option("--at", at, "extra sample point for kcontact and flag checks, e.g. \"x=0,t=0\"");
    check->add_option("--max-flag", max_flag, "default flag length cap")->check(CLI::PositiveNumber);
    check->add_option("--jobs", jobs, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    add_output_options(check, out);

    auto *corpus = app.add_subcommand("corpus", "the built-in example corpus");
    corpus->require_subcommand(1);
    auto *list = corpus->add_subcommand("list", "list corpus models");
    auto *run = corpus->add_subcommand("run", "run every corpus model");
    run->add_option("--filter", filter, "only models whose name contains NAME");
    run->add_option("--dir", dir, "read .kg files from DIR instead of the built-in copies");
    run->add_option("--at", at, "extra sample point for kcontact and flag checks");
    run->add_option("--max-flag", max_flag, "default flag length cap")->check(CLI::PositiveNumber);
    run->add_option("--jobs", jobs, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    add_output_options(run, out);

    auto *parse = app.add_subcommand("parse", "syntax check a model file");
    parse->add_option("model", model_path, "model file (.kg)")->required();
    parse->add_flag("--print", print, "print the normalized model");

    auto *exp = app.add_subcommand("export", "print a built-in algebra or jet corpus in the model language");
    exp->add_option("what", export_what, "algebra or jet")->required()->check(CLI::IsMember({"algebra", "jet"}));
    exp->add_option("name", export_name, "algebra or corpus name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    RunOptions opts;
    opts.jobs = jobs;
    if (max_flag > 0) opts.max_flag = max_flag;
    try {
        opts.at = parse_assignments(at);
    } catch (const Error &e) {
        std::cerr << "kontakt: --at: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*check) {
            Model m = load_model(model_path);
            return emit(run_model(m, opts), out);
        }
        if (*list) {
            for (const auto &n : corpus_names()) std::cout << n << "\n";
            return 0;
        }
        if (*run) return emit(run_corpus(filter, opts, dir), out);
        if (*parse) {
            Model m = load_model(model_path);
            if (print) {
                std::cout << print_model(m);
            } else {
                std::cout << "ok: " << m.charts.size() << " charts, " << m.fields.size() << " vector fields, "
                          << m.forms.size() << " forms, " << m.dists.size() << " distributions, "
                          << m.algebras.size() << " algebras, " << m.checks.size() << " checks\n";
            }
            return 0;
        }
        if (*exp) {
            if (export_what == "algebra")
                std::cout << export_algebra(corpus_algebra(export_name));
            else
                std::cout << export_jet_corpus(jet_corpus(export_name));
            return 0;
        }
    } catch (const Error &e) {
        std::cerr << "kontakt: " << (model_path.empty() ? "" : model_path + ": ") << e.what() << "\n";
        return 2;
    }
    return 2;
}
