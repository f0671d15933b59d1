#include "kontakt/cli.hpp"
#include "kontakt/error.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace kontakt::cli {

namespace detail {
std::vector<CheckRecord> run_all(const std::vector<std::pair<const Model *, const CheckDirective *>> &jobs,
                                 const RunOptions &opts);
}

std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (const auto &[name, text] : embedded_corpus()) out.push_back(name);
    return out;
}

namespace {

std::vector<std::pair<std::string, std::string>> sources(const std::string &dir) {
    if (dir.empty()) return embedded_corpus();
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &e : std::filesystem::directory_iterator(dir)) {
        if (e.path().extension() != ".kg") continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        out.push_back({e.path().stem().string(), ss.str()});
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

Report run_corpus(const std::string &filter, const RunOptions &opts, const std::string &dir) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Model> models;
    std::vector<CheckRecord> broken;
    for (const auto &[name, text] : sources(dir)) {
        if (name.find(filter) == std::string::npos) continue;
        try {
            models.push_back(parse_model(text, name));
        } catch (const Error &e) {
            CheckRecord r;
            r.model = name;
            r.name = r.kind = "parse";
            r.status = "error";
            r.error_code = errc_name(e.code());
            r.error_message = e.what();
            broken.push_back(r);
        }
    }
    std::vector<std::pair<const Model *, const CheckDirective *>> jobs;
    for (const auto &m : models)
        for (const auto &c : m.checks) jobs.push_back({&m, &c});
    Report rep;
    rep.model = "corpus";
    rep.checks = detail::run_all(jobs, opts);
    rep.checks.insert(rep.checks.end(), broken.begin(), broken.end());
    std::stable_sort(rep.checks.begin(), rep.checks.end(),
                     [](const CheckRecord &a, const CheckRecord &b) { return a.model < b.model; });
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace kontakt::cli
