#include "tasks.hpp"

#include <chrono>
#include <sstream>

namespace factorlab::cli {

namespace {

ojson witness_json(const Witness& w)
{
    ojson j{{"inputs", w.inputs}, {"lhs", w.lhs}, {"rhs", w.rhs}};
    if (w.order)
        j["order"] = *w.order;
    return j;
}

ojson check_json(const CheckReport& r)
{
    ojson j{{"check", r.check}, {"pass", r.pass}, {"tuples_checked", r.tuples_checked}};
    if (!r.pass) {
        j["failed"] = r.failed;
        if (r.witness)
            j["witness"] = witness_json(*r.witness);
    }
    return j;
}

template <Field K>
ojson values_json(const Factorisation<K>& F, const Cochain<K>& c, unsigned bound)
{
    const auto slots = argument_slots(F, c.bidegree());
    ojson out = ojson::array();
    for_each_tuple<K>(slots, bound, [&](const MonoTuple& t) {
        const auto v = c(t);
        if (v.is_zero())
            return;
        ojson args = ojson::array();
        for (std::size_t s = 0; s < t.size(); ++s)
            args.push_back(slots[s]->format(t[s]));
        out.push_back(ojson{{"args", std::move(args)}, {"value", F.format(v)}});
    });
    return out;
}

template <Field K>
ojson total_json(const Factorisation<K>& F, const TotalCochain<K>& x, unsigned bound,
                 const std::vector<std::string>& names)
{
    ojson out = ojson::array();
    const unsigned k = x.degree();
    for (unsigned m = k + 1; m-- > 0;)
        out.push_back(ojson{{"component", names[k - m]},
                            {"bidegree", BiDegree{m, k - m}.str()},
                            {"values", values_json(F, x.component(m), bound)}});
    return out;
}

const std::vector<std::string> kObsNames = {"Obs_A", "Obs_A,Psi", "Obs_B,Psi", "Obs_B"};
const std::vector<std::string> kTermNames = {"mu_A", "psi", "mu_B"};

struct Limits {
    std::optional<unsigned> degree;
    std::optional<unsigned> output;

    /// Input degree bound for checks; finite algebras need none.
    template <Scalar S>
    unsigned bound(const Factorisation<S>& F) const
    {
        if (F.finite())
            return degree.value_or(0);
        if (!degree)
            throw MissingCapsError("missing caps: the algebras are infinite-dimensional; set caps.degree in the "
                                   "document or pass --degree-cap");
        return *degree;
    }

    template <Scalar S>
    std::optional<Caps> caps(const Factorisation<S>& F) const
    {
        if (F.finite())
            return std::nullopt;
        const unsigned in = bound(F);
        return Caps{in, output.value_or(in + 2)};
    }
};

Limits limits_for(const json& doc, const TaskOptions& opts)
{
    Limits l;
    if (doc.contains("caps")) {
        l.degree = doc.at("caps").at("degree").get<unsigned>();
        if (doc.at("caps").contains("output"))
            l.output = doc.at("caps").at("output").get<unsigned>();
    }
    if (opts.degree_cap)
        l.degree = opts.degree_cap;
    return l;
}

std::optional<unsigned> doc_order(const json& doc, const TaskOptions& opts)
{
    if (opts.order)
        return opts.order;
    if (doc.contains("order"))
        return doc.at("order").get<unsigned>();
    return std::nullopt;
}

int set_verdict(ojson& report, bool pass)
{
    report["verdict"] = pass ? "PASS" : "FAIL";
    return pass ? Pass : Fail;
}

template <Field K>
const DeformationData<K>& need_deformation(const io::Model<K>& m)
{
    if (!m.deformation)
        throw io::InputError("the document has no deformation");
    return *m.deformation;
}

template <Field K>
int check_twist(const json& doc, const io::QSetting& q, const TaskOptions& opts, ojson& report)
{
    const auto F = io::read_factorisation<K>(doc, q);
    const auto r = check_axioms(F, limits_for(doc, opts).bound(F));
    report["checks"].push_back(check_json(r));
    return set_verdict(report, r.pass);
}

template <Field K>
int check_deformation(const json& doc, const io::QSetting& q, const TaskOptions& opts, ojson& report)
{
    const auto model = io::build<K>(doc, q);
    const auto& def = need_deformation(model);
    const unsigned n = doc_order(doc, opts).value_or(def.order());
    if (n > def.order())
        throw io::InputError("order " + std::to_string(n) + " exceeds the deformation order " +
                             std::to_string(def.order()));
    report["order"] = n;
    const unsigned bound = limits_for(doc, opts).bound(def.base());
    const auto r = check_order(def, n, bound);
    report["checks"].push_back(check_json(r));
    bool pass = r.pass;
    if (n >= 1) {
        const auto inf = infinitesimal_cocycle_check(def, bound);
        report["checks"].push_back(check_json(inf.cocycle));
        report["checks"].push_back(check_json(inf.deformation));
        pass = pass && inf.cocycle.pass && inf.deformation.pass;
    }
    return set_verdict(report, pass);
}

template <Field K>
int obstruction_task(const json& doc, const io::QSetting& q, const TaskOptions& opts, ojson& report)
{
    const auto model = io::build<K>(doc, q);
    const auto& given = need_deformation(model);
    const unsigned n = doc_order(doc, opts).value_or(given.order() + 1);
    if (n == 0)
        throw io::InputError("obstruction order must be positive");
    report["order"] = n;
    const auto def = given.extended_to(n);
    const auto& F = def.base();
    const Limits lim = limits_for(doc, opts);
    const unsigned bound = lim.bound(F);

    const auto obs = obstruction(def, n, bound);
    const auto cocycle = obstruction_is_cocycle(F, obs, bound);
    report["checks"].push_back(check_json(obs.agreement));
    report["checks"].push_back(check_json(cocycle));
    report["obstruction"] = ojson{{"vanishes", vanishes_on(F, obs.total(), bound).pass},
                                  {"components", total_json(F, obs.total(), bound, kObsNames)}};
    if (!obs.agreement.pass || !cocycle.pass)
        return set_verdict(report, false);
    if (!opts.extend)
        return set_verdict(report, true);

    const auto caps = lim.caps(F);
    const auto ext = extend_order(def, n, caps, true);
    const unsigned shown = caps ? caps->input : bound;
    ojson e;
    switch (ext.status) {
    case ExtensionStatus::Extended:
        e["status"] = "extended";
        break;
    case ExtensionStatus::NonRemovable:
        e["status"] = "non-removable";
        break;
    case ExtensionStatus::Inconclusive:
        e["status"] = "inconclusive";
        break;
    }
    if (!ext.reason.empty())
        e["reason"] = ext.reason;
    if (ext.witness)
        e["witness"] = witness_json(*ext.witness);
    if (ext.terms) {
        e["terms"] = total_json(F, *ext.terms, shown, kTermNames);
        ojson basis = ojson::array();
        for (const auto& f : ext.freedom)
            basis.push_back(total_json(F, f, shown, kTermNames));
        e["free_parameters"] = ext.freedom.size();
        e["freedom"] = std::move(basis);
    }
    report["extension"] = std::move(e);
    switch (ext.status) {
    case ExtensionStatus::Extended:
        return set_verdict(report, true);
    case ExtensionStatus::NonRemovable:
        return set_verdict(report, false);
    case ExtensionStatus::Inconclusive:
        break;
    }
    report["verdict"] = "INCONCLUSIVE";
    report["message"] = ext.reason;
    return Inconclusive;
}

template <Field K>
int cohomology_task(const json& doc, const io::QSetting& q, const TaskOptions& opts, ojson& report)
{
    const auto F = io::read_factorisation<K>(doc, q);
    const unsigned k = doc_order(doc, opts).value_or(2);
    if (k == 0)
        throw io::InputError("cohomology degree must be positive");
    report["order"] = k;
    if (!F.finite()) {
        report["verdict"] = "INCONCLUSIVE";
        report["message"] = "cohomology dimensions need finite-dimensional algebras; a capped complex does not "
                            "determine them";
        return Inconclusive;
    }
    const auto d = cohomology_dim(F, k);
    report["cohomology"] = ojson{{"k", k},
                                 {"dimension", d.cohomology},
                                 {"dim_C_prev", d.dim_prev},
                                 {"dim_C", d.dim},
                                 {"dim_C_next", d.dim_next},
                                 {"rank_D_prev", d.rank_prev},
                                 {"rank_D", d.rank},
                                 {"kernel_D", d.dim - d.rank},
                                 {"matrix_D", ojson{{"rows", d.dim_next}, {"columns", d.dim}}}};
    report["verdict"] = "PASS";
    return Pass;
}

template <Field K>
int dispatch(const std::string& task, const json& doc, const io::QSetting& q, const TaskOptions& opts, ojson& report)
{
    if (task == "check-twist")
        return check_twist<K>(doc, q, opts, report);
    if (task == "check-deformation")
        return check_deformation<K>(doc, q, opts, report);
    if (task == "obstruction")
        return obstruction_task<K>(doc, q, opts, report);
    if (task == "cohomology")
        return cohomology_task<K>(doc, q, opts, report);
    throw io::InputError("unknown task '" + task + "'");
}

int fail_with(ojson& report, const std::string& message, const std::optional<Witness>& w)
{
    report["verdict"] = "FAIL";
    report["message"] = message;
    if (w)
        report["witness"] = witness_json(*w);
    return Fail;
}

int stop(ojson& report, const char* verdict, const std::string& message, int code)
{
    report["verdict"] = verdict;
    report["message"] = message;
    return code;
}

} // namespace

TaskResult run_task(const std::string& task, const json& doc, const TaskOptions& opts)
{
    const auto start = std::chrono::steady_clock::now();
    TaskResult out;
    ojson& report = out.report;
    report["task"] = task;
    report["input"] = doc.is_object() ? doc.value("id", "") : "";
    try {
        io::validate(doc);
        const auto q = io::QSetting::resolve(doc, opts.q);
        report["field"] = q.formal ? "Q(q)" : "Q";
        report["q"] = q.str();
        const Limits lim = limits_for(doc, opts);
        if (lim.degree)
            report["caps"] = ojson{{"degree", *lim.degree}, {"output", lim.output.value_or(*lim.degree + 2)}};
        report["checks"] = ojson::array();
        out.exit_code = q.formal ? dispatch<QRational>(task, doc, q, opts, report)
                                 : dispatch<Rational>(task, doc, q, opts, report);
    } catch (const AmbiguousExtensionError& e) {
        out.exit_code = fail_with(report, e.what(), e.witness);
    } catch (const PreconditionError& e) {
        out.exit_code = fail_with(report, e.what(), e.report.witness);
    } catch (const MissingCapsError& e) {
        out.exit_code = stop(report, "INCONCLUSIVE", e.what(), Inconclusive);
    } catch (const CapEscapeError& e) {
        out.exit_code = stop(report, "INCONCLUSIVE", e.what(), Inconclusive);
    } catch (const json::exception& e) {
        out.exit_code = stop(report, "ERROR", std::string("input error: ") + e.what(), InputFailure);
    } catch (const std::invalid_argument& e) {
        out.exit_code = stop(report, "ERROR", std::string("input error: ") + e.what(), InputFailure);
    } catch (const std::out_of_range& e) {
        out.exit_code = stop(report, "ERROR", std::string("input error: ") + e.what(), InputFailure);
    } catch (const std::exception& e) {
        out.exit_code = stop(report, "INCONCLUSIVE", std::string("internal error: ") + e.what(), Inconclusive);
    }
    if (opts.timing)
        report["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

TaskResult run_corpus(const TaskOptions& opts)
{
    TaskResult out;
    ojson results = ojson::array();
    bool all = true;
    for (const auto& entry : io::corpus_entries()) {
        const json doc = json::parse(entry.document.dump());
        for (const auto& e : entry.document.at("expected")) {
            TaskOptions o;
            o.timing = opts.timing;
            if (e.contains("order"))
                o.order = e.at("order").get<unsigned>();
            o.extend = e.value("extend", false);
            const std::string task = e.at("task").get<std::string>();
            const auto r = run_task(task, doc, o);
            const std::string got = r.report.at("verdict").get<std::string>();
            bool match = got == e.at("verdict").get<std::string>();
            ojson line{{"id", entry.id}, {"task", task}};
            if (o.order)
                line["order"] = *o.order;
            if (o.extend)
                line["extend"] = true;
            line["expected"] = e.at("verdict");
            line["got"] = got;
            if (e.contains("dimension")) {
                const bool has = r.report.contains("cohomology");
                line["expected_dimension"] = e.at("dimension");
                if (has)
                    line["dimension"] = r.report.at("cohomology").at("dimension");
                match = match && has && r.report.at("cohomology").at("dimension") == e.at("dimension");
            }
            line["source"] = e.at("source");
            line["match"] = match;
            if (opts.timing && r.report.contains("seconds"))
                line["seconds"] = r.report.at("seconds");
            all = all && match;
            results.push_back(std::move(line));
        }
    }
    out.report = ojson{{"task", "corpus run-all"}, {"verdict", all ? "PASS" : "FAIL"}, {"results", std::move(results)}};
    out.exit_code = all ? Pass : Fail;
    return out;
}

namespace {

void render_witness(std::ostringstream& os, const ojson& w, const std::string& indent)
{
    os << indent << "inputs: (";
    bool first = true;
    for (const auto& i : w.at("inputs")) {
        os << (first ? "" : ", ") << i.get<std::string>();
        first = false;
    }
    os << ")\n" << indent << "lhs: " << w.at("lhs").get<std::string>() << "\n"
       << indent << "rhs: " << w.at("rhs").get<std::string>() << "\n";
    if (w.contains("order"))
        os << indent << "first differing power: t^" << w.at("order").get<unsigned>() << "\n";
}

void render_values(std::ostringstream& os, const ojson& comps)
{
    for (const auto& c : comps) {
        os << "  " << c.at("component").get<std::string>() << " " << c.at("bidegree").get<std::string>() << ": ";
        if (c.at("values").empty()) {
            os << "0\n";
            continue;
        }
        os << c.at("values").size() << " nonzero value(s)\n";
        for (const auto& v : c.at("values")) {
            os << "    (";
            bool first = true;
            for (const auto& a : v.at("args")) {
                os << (first ? "" : ", ") << a.get<std::string>();
                first = false;
            }
            os << ") -> " << v.at("value").get<std::string>() << "\n";
        }
    }
}

} // namespace

std::string render_human(const ojson& r)
{
    std::ostringstream os;
    os << r.at("task").get<std::string>();
    if (r.contains("input") && !r.at("input").get<std::string>().empty())
        os << " [" << r.at("input").get<std::string>() << "]";
    if (r.contains("order"))
        os << " order " << r.at("order").get<unsigned>();
    os << ": " << r.at("verdict").get<std::string>() << "\n";
    if (r.contains("field"))
        os << "field " << r.at("field").get<std::string>() << ", q " << r.at("q").get<std::string>();
    if (r.contains("caps"))
        os << ", caps degree " << r.at("caps").at("degree").get<unsigned>() << " output "
           << r.at("caps").at("output").get<unsigned>();
    if (r.contains("field"))
        os << "\n";
    if (r.contains("checks"))
        for (const auto& c : r.at("checks")) {
            os << (c.at("pass").get<bool>() ? "  [pass] " : "  [FAIL] ") << c.at("check").get<std::string>() << " ("
               << c.at("tuples_checked").get<std::size_t>() << " tuples)\n";
            if (c.contains("failed"))
                os << "    failed: " << c.at("failed").get<std::string>() << "\n";
            if (c.contains("witness"))
                render_witness(os, c.at("witness"), "    ");
        }
    if (r.contains("obstruction")) {
        const auto& o = r.at("obstruction");
        os << "obstruction " << (o.at("vanishes").get<bool>() ? "vanishes" : "is nonzero") << " within the caps\n";
        render_values(os, o.at("components"));
    }
    if (r.contains("extension")) {
        const auto& e = r.at("extension");
        os << "extension: " << e.at("status").get<std::string>() << "\n";
        if (e.contains("reason"))
            os << "  " << e.at("reason").get<std::string>() << "\n";
        if (e.contains("witness"))
            render_witness(os, e.at("witness"), "  ");
        if (e.contains("terms")) {
            os << "particular solution:\n";
            render_values(os, e.at("terms"));
            os << "free parameters: " << e.at("free_parameters").get<std::size_t>() << "\n";
        }
    }
    if (r.contains("cohomology")) {
        const auto& c = r.at("cohomology");
        os << "H^" << c.at("k").get<unsigned>() << " dimension " << c.at("dimension").get<std::size_t>()
           << " (D_" << c.at("k").get<unsigned>() << ": " << c.at("matrix_D").at("rows").get<std::size_t>() << " x "
           << c.at("matrix_D").at("columns").get<std::size_t>() << ", rank " << c.at("rank_D").get<std::size_t>()
           << ", kernel " << c.at("kernel_D").get<std::size_t>() << ")\n";
    }
    if (r.contains("results"))
        for (const auto& l : r.at("results")) {
            os << (l.at("match").get<bool>() ? "  ok   " : "  BAD  ") << l.at("id").get<std::string>() << " "
               << l.at("task").get<std::string>();
            if (l.contains("order"))
                os << " " << l.at("order").get<unsigned>();
            if (l.contains("extend"))
                os << " --extend";
            os << ": expected " << l.at("expected").get<std::string>() << ", got " << l.at("got").get<std::string>();
            if (l.contains("expected_dimension"))
                os << " (dimension " << l.at("expected_dimension").get<unsigned>() << ")";
            os << " [" << l.at("source").get<std::string>() << "]\n";
        }
    if (r.contains("witness"))
        render_witness(os, r.at("witness"), "  ");
    if (r.contains("message"))
        os << r.at("message").get<std::string>() << "\n";
    if (r.contains("seconds"))
        os << "time " << r.at("seconds").get<double>() << " s\n";
    return os.str();
}

} // namespace factorlab::cli
