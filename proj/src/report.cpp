#include "pkb/report.hpp"

#include <cstdio>
#include <sstream>

#include "pkb/render.hpp"

namespace pkb {

std::string format_bits(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    // Avoid the two representations of zero.
    if (std::string(buf) == "-0.000000") return "0.000000";
    return buf;
}

namespace {

// Minimal JSON writer. Keys are emitted in sorted order by construction
// (every object literal below lists its keys alphabetically).
std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string jstr(const std::string& s) { return "\"" + json_escape(s) + "\""; }

std::string row_label(const KnowledgeStore& store, const Row& r) {
    if (r.is_new) return "new";
    const Pattern& p = store.pattern(r.pattern);
    return p.label.empty() ? "p#" + std::to_string(r.pattern) : p.label;
}

void emit_alignment_json(std::ostringstream& out, const ScoredAlignment& s,
                         const KnowledgeStore& store, const NewPattern& np) {
    const MultiAlignment& a = s.alignment;
    out << "{\"b_e\":" << format_bits(s.score.b_e) << ",\"b_n\":" << format_bits(s.score.b_n)
        << ",\"cd\":" << format_bits(s.score.cd) << ",\"columns\":[";
    auto order = column_order(a, store, np);
    for (std::size_t i = 0; i < order->size(); ++i) {
        const Column& c = a.columns[static_cast<size_t>((*order)[i])];
        if (i) out << ",";
        out << "{\"entries\":[";
        out << "{\"position\":" << c.first.pos << ",\"row\":" << c.first.row << "},";
        out << "{\"position\":" << c.second.pos << ",\"row\":" << c.second.row << "}";
        out << "],\"symbol\":" << jstr(store.symbols().name(c.sym)) << "}";
    }
    out << "],\"coverage\":[";
    for (std::size_t i = 0; i < s.covered.size(); ++i) {
        if (i) out << ",";
        out << s.covered[i];
    }
    out << "],\"rows\":[";
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        if (r) out << ",";
        if (a.rows[r].is_new) {
            out << "{\"kind\":\"new\"}";
        } else {
            out << "{\"kind\":\"old\",\"occurrence\":" << a.rows[r].reuse_index
                << ",\"pattern\":" << jstr(row_label(store, a.rows[r])) << "}";
        }
    }
    out << "]}";
}

std::string new_text(const NewPattern& np) {
    std::string s;
    for (std::size_t i = 0; i < np.size(); ++i) {
        if (i) s += ' ';
        s += np.occs[i].name;
    }
    return s;
}

}  // namespace

QueryReport run_query(const std::string& command, const KnowledgeStore& store,
                      const NewPattern& np, const SearchParams& params) {
    QueryReport rep;
    rep.command = command;
    rep.query = np;
    rep.params = params;
    rep.search = build_alignments(store, store.costs(), np, params);
    rep.alignments = rep.search.reported(params.top_k_reported);
    if (command == "infer") {
        rep.include_groups = true;
        rep.groups = analyze_coverage(rep.alignments, store, np);
    } else if (command == "recognize") {
        rep.include_recognition = true;
        if (!rep.alignments.empty()) {
            rep.recognition = recognize(rep.alignments.front()->alignment, store, np);
        }
    }
    return rep;
}

std::string emit_report(const QueryReport& report, const KnowledgeStore& store,
                        ReportFormat format) {
    const NewPattern& np = report.query;
    if (format == ReportFormat::Json) {
        std::ostringstream out;
        out << "{\"alignments\":[";
        for (std::size_t i = 0; i < report.alignments.size(); ++i) {
            if (i) out << ",";
            emit_alignment_json(out, *report.alignments[i], store, np);
        }
        out << "],\"command\":" << jstr(report.command);
        if (report.include_groups) {
            out << ",\"groups\":[";
            for (std::size_t g = 0; g < report.groups.size(); ++g) {
                const CoverageGroup& grp = report.groups[g];
                if (g) out << ",";
                out << "{\"alignments\":[";
                for (std::size_t m = 0; m < grp.members.size(); ++m) {
                    if (m) out << ",";
                    for (std::size_t i = 0; i < report.alignments.size(); ++i) {
                        if (report.alignments[i] == grp.members[m]) out << i;
                    }
                }
                out << "],\"coverage\":[";
                for (std::size_t i = 0; i < grp.covered.size(); ++i) {
                    if (i) out << ",";
                    out << grp.covered[i];
                }
                out << "],\"inferences\":[";
                bool first = true;
                for (const auto& [sym, p] : grp.p_inf) {
                    if (!first) out << ",";
                    first = false;
                    out << "{\"p\":" << format_bits(p) << ",\"symbol\":" << jstr(sym) << "}";
                }
                out << "],\"p_rel\":[";
                for (std::size_t m = 0; m < grp.p_rel.size(); ++m) {
                    if (m) out << ",";
                    out << format_bits(grp.p_rel[m]);
                }
                out << "]}";
            }
            out << "]";
        }
        out << ",\"new\":[";
        for (std::size_t i = 0; i < np.size(); ++i) {
            if (i) out << ",";
            out << "{\"novel\":" << (np.occs[i].novel ? "true" : "false")
                << ",\"symbol\":" << jstr(np.occs[i].name) << "}";
        }
        out << "],\"parameters\":{\"beam\":" << report.params.beam_width
            << ",\"iterations\":" << report.params.max_iterations
            << ",\"max_rows\":" << report.params.max_rows
            << ",\"reuse\":" << report.params.max_pattern_reuse
            << ",\"top\":" << report.params.top_k_reported << "}";
        if (report.include_recognition) {
            out << ",\"recognition\":[";
            for (std::size_t i = 0; i < report.recognition.size(); ++i) {
                const Recognition& r = report.recognition[i];
                if (i) out << ",";
                out << "{\"length\":" << r.length << ",\"matched\":" << r.matched
                    << ",\"occurrence\":" << r.reuse_index
                    << ",\"pattern\":" << jstr(r.label) << "}";
            }
            out << "]";
        }
        out << ",\"status\":" << (report.empty() ? "\"no_alignment\"" : "\"ok\"") << "}\n";
        return out.str();
    }

    // Text format.
    std::ostringstream out;
    out << "query: " << new_text(np) << "\n";
    if (report.empty()) {
        out << "no alignment (cd>0) found\n";
        return out.str();
    }
    for (std::size_t i = 0; i < report.alignments.size(); ++i) {
        const ScoredAlignment& s = *report.alignments[i];
        out << "\nalignment " << (i + 1) << ": cd=" << format_bits(s.score.cd)
            << " b_n=" << format_bits(s.score.b_n) << " b_e=" << format_bits(s.score.b_e)
            << " rows=" << s.alignment.rows.size()
            << " columns=" << s.alignment.columns.size() << "\n";
        out << render_alignment(s.alignment, store, np);
    }
    if (report.include_groups) {
        for (std::size_t g = 0; g < report.groups.size(); ++g) {
            const CoverageGroup& grp = report.groups[g];
            out << "\ngroup " << (g + 1) << ": coverage {";
            for (std::size_t i = 0; i < grp.covered.size(); ++i) {
                if (i) out << " ";
                out << np.occs[static_cast<size_t>(grp.covered[i])].name;
            }
            out << "} members=" << grp.members.size() << "\n";
            for (std::size_t m = 0; m < grp.members.size(); ++m) {
                out << "  p_rel=" << format_bits(grp.p_rel[m])
                    << " cd=" << format_bits(grp.members[m]->score.cd) << "\n";
            }
            for (const auto& [sym, p] : grp.p_inf) {
                out << "  infer " << sym << " p=" << format_bits(p) << "\n";
            }
        }
    }
    if (report.include_recognition) {
        out << "\nrecognized as:\n";
        for (const Recognition& r : report.recognition) {
            out << "  " << r.label;
            if (r.reuse_index > 1) out << " (copy " << r.reuse_index << ")";
            out << ": " << r.matched << "/" << r.length << " matched\n";
        }
    }
    return out.str();
}

}  // namespace pkb
