#include "polybound/report.hpp"

#include <sstream>

namespace polybound {

namespace {

nlohmann::json verdict_json(const TwnAnalysis &a) {
    nlohmann::json j;
    j["verdict"] = a.verdict.to_string();
    if (a.verdict.kind == TerminationVerdict::Kind::NonTerminating) {
        nlohmann::json w = nlohmann::json::object();
        for (const auto &[v, x] : a.verdict.witness) {
            w[v.name] = x.get_str();
        }
        j["witness"] = w;
    }
    if (a.local_bound) {
        j["local_bound"] = a.local_bound->to_string();
    }
    if (!a.reason.empty()) {
        j["reason"] = a.reason;
    }
    return j;
}

} // namespace

nlohmann::json report_json(const Program &p, const AnalysisResult &r, const ReportOptions &opts) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["variables"] = nlohmann::json::array();
    for (const auto &v : p.vars()) {
        j["variables"].push_back(v.name);
    }
    j["transitions"] = nlohmann::json::array();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto &t = p.transition(i);
        nlohmann::json tj;
        tj["id"] = t.id;
        tj["source"] = t.src.name;
        tj["target"] = t.tgt.name;
        tj["runtime_bound"] = r.rb.at(i).to_string();
        nlohmann::json sb = nlohmann::json::object();
        for (const auto &v : p.vars()) {
            sb[v.name] = r.sb.get(i, v).to_string();
        }
        tj["size_bounds"] = sb;
        const auto &prov = r.provenance.at(i);
        tj["provenance"] = {{"kind", Provenance::kind_name(prov.kind)}, {"detail", prov.detail}};
        auto it = r.twn.find(i);
        if (it != r.twn.end()) {
            tj["twn"] = verdict_json(it->second);
        }
        j["transitions"].push_back(tj);
    }
    j["overall"] = r.overall.to_string();
    j["class"] = r.cls.to_string();
    j["finite"] = r.overall.is_finite();
    j["notes"] = r.notes;
    if (opts.timings) {
        nlohmann::json tm = nlohmann::json::object();
        for (const auto &[k, ms] : r.timings_ms) {
            tm[k] = ms;
        }
        j["timings_ms"] = tm;
    }
    return j;
}

std::string report_text(const Program &p, const AnalysisResult &r, const ReportOptions &opts) {
    std::ostringstream os;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto &t = p.transition(i);
        const auto &prov = r.provenance.at(i);
        os << "RB(" << t.id << ") = " << r.rb.at(i).to_string() << "    [" << Provenance::kind_name(prov.kind);
        if (!prov.detail.empty()) {
            os << ": " << prov.detail;
        }
        os << "]\n";
        auto it = r.twn.find(i);
        if (it != r.twn.end()) {
            os << "  twn " << t.id << ": " << it->second.verdict.to_string() << "\n";
        }
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (const auto &v : p.vars()) {
            os << "SB(" << p.transition(i).id << "," << v.name << ") = " << r.sb.get(i, v).to_string() << "\n";
        }
    }
    for (const auto &n : r.notes) {
        os << "note: " << n << "\n";
    }
    os << "overall: " << r.overall.to_string() << "\n";
    os << "class: " << r.cls.to_string() << "\n";
    if (opts.timings) {
        for (const auto &[k, ms] : r.timings_ms) {
            os << "time " << k << ": " << ms << " ms\n";
        }
    }
    return os.str();
}

} // namespace polybound
