#include "tasks.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace factorlab;
using namespace factorlab::cli;

namespace {

struct Common {
    std::string input;
    std::optional<unsigned> order;
    std::optional<unsigned> degree_cap;
    std::optional<std::string> q;
    bool extend = false;
    bool timing = false;
    std::string format = "human";
};

int emit(const TaskResult& r, const std::string& format)
{
    if (format == "json")
        std::cout << r.report.dump(2) << "\n";
    else
        std::cout << render_human(r.report);
    return r.exit_code;
}

int input_error(const std::string& message, const std::string& format)
{
    TaskResult r;
    r.report = ojson{{"task", "input"}, {"verdict", "ERROR"}, {"message", message}};
    r.exit_code = InputFailure;
    return emit(r, format);
}

int run_document_task(const std::string& task, const Common& c)
{
    std::ifstream in(c.input);
    if (!in)
        return input_error("cannot read " + c.input, c.format);
    std::stringstream text;
    text << in.rdbuf();
    json doc;
    try {
        doc = json::parse(text.str());
    } catch (const json::parse_error& e) {
        return input_error(std::string("invalid JSON: ") + e.what(), c.format);
    }
    TaskOptions o{c.order, c.degree_cap, c.q, c.extend, c.timing};
    return emit(run_task(task, doc, o), c.format);
}

void add_common(CLI::App* app, Common& c, bool extend)
{
    app->add_option("--input", c.input, "input document (JSON)")->required()->check(CLI::ExistingFile);
    app->add_option("--order", c.order, "order n (cohomology: degree k)");
    app->add_option("--degree-cap", c.degree_cap, "input degree bound for infinite-dimensional algebras");
    app->add_option("--q", c.q, "'formal' or a rational value for q");
    if (extend)
        app->add_flag("--extend", c.extend, "solve for the next-order terms and report the solution family");
    app->add_flag("--timing", c.timing, "include wall-clock time in reports");
    app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"human", "json"}));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"factorlab: twisted tensor products, their complex, cohomology and deformations"};
    app.require_subcommand(1);

    Common c;
    int rc = Pass;
    const std::vector<std::string> tasks = {"check-twist", "check-deformation", "obstruction", "cohomology"};
    for (const auto& t : tasks) {
        auto* sub = app.add_subcommand(t);
        add_common(sub, c, t == "obstruction");
        sub->callback([&c, &rc, t] { rc = run_document_task(t, c); });
    }

    auto* corpus = app.add_subcommand("corpus", "built-in worked examples");
    corpus->require_subcommand(1);
    std::string format = "human";
    bool timing = false;
    auto corpus_flags = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"human", "json"}));
        sub->add_flag("--timing", timing, "include wall-clock times");
    };
    corpus_flags(corpus);

    auto* list = corpus->add_subcommand("list", "list corpus ids");
    corpus_flags(list);
    list->callback([&] {
        if (format == "json") {
            ojson list = ojson::array();
            for (const auto& e : io::corpus_entries())
                list.push_back(ojson{{"id", e.id}, {"description", e.description}});
            std::cout << list.dump(2) << "\n";
        } else {
            for (const auto& e : io::corpus_entries())
                std::cout << e.id << "  " << e.description << "\n";
        }
    });

    std::string id;
    auto* exp = corpus->add_subcommand("export", "print a corpus entry as an input document");
    exp->add_option("id", id, "corpus id")->required();
    corpus_flags(exp);
    exp->callback([&] {
        try {
            std::cout << io::corpus_entry(id).document.dump(2) << "\n";
        } catch (const io::InputError& e) {
            rc = input_error(e.what(), format);
        }
    });

    auto* run_all = corpus->add_subcommand("run-all", "run every expectation of every entry");
    corpus_flags(run_all);
    run_all->callback([&] {
        TaskOptions o;
        o.timing = timing;
        rc = emit(run_corpus(o), format);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Pass : InputFailure;
    }
    return rc;
}
