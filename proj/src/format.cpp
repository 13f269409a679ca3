#include "pkb/format.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "pkb/errors.hpp"

namespace pkb {

namespace {

bool all_digits(const std::string& tok) {
    if (tok.empty()) return false;
    for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void record_error(const std::string& origin, std::size_t line_no,
                               const std::string& token, const std::string& what) {
    throw FormatError(origin + ":" + std::to_string(line_no) + ": " + what +
                      (token.empty() ? "" : " (at '" + token + "')"));
}

}  // namespace

KnowledgeStore load_kb_text(const std::string& text, const std::string& origin) {
    KnowledgeStore store;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // Strip comments before tokenizing.
        auto slash = line.find("//");
        if (slash != std::string::npos) line = line.substr(0, slash);
        std::vector<std::string> toks = split_tokens(line);
        if (toks.empty()) continue;

        if (toks.back() != ";") {
            record_error(origin, line_no, toks.back(), "record must end with ';'");
        }
        toks.pop_back();
        if (toks.empty()) record_error(origin, line_no, ";", "empty record");

        std::string label;
        std::size_t i = 0;
        if (toks.size() >= 2 && toks[1] == ":") {
            label = toks[0];
            i = 2;
        } else if (!toks[0].empty() && toks[0].back() == ':') {
            label = toks[0].substr(0, toks[0].size() - 1);
            if (label.empty()) record_error(origin, line_no, toks[0], "empty label");
            i = 1;
        }

        std::uint64_t freq = 1;
        if (i + 1 < toks.size() && all_digits(toks[i]) && toks[i + 1] == "x") {
            freq = std::stoull(toks[i]);
            if (freq < 1) record_error(origin, line_no, toks[i], "frequency must be >= 1");
            i += 2;
        }

        std::vector<std::string> names;
        std::vector<bool> marks;
        for (; i < toks.size(); ++i) {
            const std::string& t = toks[i];
            if (t[0] == '%') {
                if (t.size() == 1) record_error(origin, line_no, t, "empty symbol after '%'");
                names.push_back(t.substr(1));
                marks.push_back(true);
            } else {
                names.push_back(t);
                marks.push_back(false);
            }
        }
        if (names.empty()) record_error(origin, line_no, "", "record has no symbols");

        try {
            store.add_pattern(names, marks, freq, label);
        } catch (const Error& e) {
            record_error(origin, line_no, "", e.what());
        }
    }
    if (store.patterns().empty()) {
        throw FormatError(origin + ": no patterns found (empty store)");
    }
    store.seal_and_build_costs();
    return store;
}

KnowledgeStore load_kb(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open pattern file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_kb_text(buf.str(), path);
}

NewPattern parse_new(const KnowledgeStore& store, const std::string& text) {
    std::vector<std::string> toks = split_tokens(text);
    if (toks.empty()) throw UsageError("query pattern is empty");
    NewPattern np;
    np.occs.reserve(toks.size());
    for (const auto& t : toks) {
        NewOcc occ;
        occ.name = t;
        occ.sym = store.symbols().find(t);
        occ.novel = (occ.sym == kNoSymbol);
        np.occs.push_back(std::move(occ));
    }
    return np;
}

std::string serialize_store(const KnowledgeStore& store) {
    std::ostringstream out;
    for (const auto& p : store.patterns()) {
        if (!p.label.empty()) out << p.label << " : ";
        out << p.frequency << " x";
        for (const auto& o : p.occs) {
            out << ' ';
            if (o.role == Role::Identification) out << '%';
            out << store.symbols().name(o.sym);
        }
        out << " ;\n";
    }
    return out.str();
}

}  // namespace pkb
