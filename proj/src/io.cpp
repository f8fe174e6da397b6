#include "quintree/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace quintree {

format_error::format_error(std::string msg, int line)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream iss(s);
    std::vector<std::string> out;
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

std::string strip_comment(const std::string& line) {
    size_t pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::vector<std::string>> parse_blocks(const std::string& line, int lineno) {
    std::vector<std::vector<std::string>> blocks;
    size_t start = 0;
    while (true) {
        size_t bar = line.find('|', start);
        std::string chunk =
            bar == std::string::npos ? line.substr(start) : line.substr(start, bar - start);
        std::vector<std::string> toks = split_ws(chunk);
        if (toks.empty()) throw format_error("empty block", lineno);
        blocks.push_back(std::move(toks));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return blocks;
}

// Applies the optional "taxa: ..." header and dispatches data lines.
template <typename System, typename LineFn>
System parse_system_file(std::istream& in, LineFn&& on_line) {
    System sys;
    bool have_header = false;
    std::vector<std::string> declared;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        if (split_ws(line).empty()) continue;
        std::vector<std::string> toks = split_ws(line);
        if (toks.front() == "taxa:") {
            if (have_header) throw format_error("duplicate taxa: header", lineno);
            if (sys.size() > 0) throw format_error("taxa: header must precede entries", lineno);
            have_header = true;
            declared.assign(toks.begin() + 1, toks.end());
            if (declared.empty()) throw format_error("taxa: header lists no taxa", lineno);
            std::sort(declared.begin(), declared.end());
            if (std::adjacent_find(declared.begin(), declared.end()) != declared.end())
                throw format_error("taxa: header repeats a taxon", lineno);
            sys = System(declared);
            continue;
        }
        auto entry = on_line(parse_blocks(line, lineno), lineno);
        if (have_header)
            for (const auto& t : entry.support())
                if (!std::binary_search(declared.begin(), declared.end(), t))
                    throw format_error("taxon '" + t + "' not in taxa: header", lineno);
        sys.add(entry);
    }
    return sys;
}

}  // namespace

QuintetSystem parse_quintet_file(std::istream& in) {
    return parse_system_file<QuintetSystem>(
        in, [](const std::vector<std::vector<std::string>>& blocks, int lineno) {
            std::vector<size_t> sizes;
            size_t total = 0;
            for (const auto& b : blocks) {
                sizes.push_back(b.size());
                total += b.size();
            }
            if (total != 5)
                throw format_error("expected 5 taxa, got " + std::to_string(total), lineno);
            try {
                if (blocks.size() == 1) {
                    const auto& b = blocks[0];
                    return Quintet::star(b[0], b[1], b[2], b[3], b[4]);
                }
                if (blocks.size() == 2) {
                    const auto& p = blocks[0].size() == 2 ? blocks[0] : blocks[1];
                    const auto& t = blocks[0].size() == 2 ? blocks[1] : blocks[0];
                    if (p.size() != 2 || t.size() != 3)
                        throw format_error("blocks must have sizes 2 and 3", lineno);
                    return Quintet::pair_triple(p[0], p[1], t[0], t[1], t[2]);
                }
                if (blocks.size() == 3) {
                    std::vector<const std::vector<std::string>*> pairs, singles;
                    for (const auto& b : blocks)
                        (b.size() == 2 ? pairs : singles).push_back(&b);
                    if (pairs.size() != 2 || singles.size() != 1 || singles[0]->size() != 1)
                        throw format_error("blocks must have sizes 2, 2 and 1", lineno);
                    return Quintet::pair_pair((*pairs[0])[0], (*pairs[0])[1], (*pairs[1])[0],
                                              (*pairs[1])[1], (*singles[0])[0]);
                }
                throw format_error("too many '|' separators", lineno);
            } catch (const std::invalid_argument& e) {
                throw format_error(e.what(), lineno);
            }
        });
}

QuartetSystem parse_quartet_file(std::istream& in) {
    return parse_system_file<QuartetSystem>(
        in, [](const std::vector<std::vector<std::string>>& blocks, int lineno) {
            size_t total = 0;
            for (const auto& b : blocks) total += b.size();
            if (total != 4)
                throw format_error("expected 4 taxa, got " + std::to_string(total), lineno);
            try {
                if (blocks.size() == 1) {
                    const auto& b = blocks[0];
                    return Quartet::star(b[0], b[1], b[2], b[3]);
                }
                if (blocks.size() == 2 && blocks[0].size() == 2 && blocks[1].size() == 2)
                    return Quartet::pair_pair(blocks[0][0], blocks[0][1], blocks[1][0],
                                              blocks[1][1]);
                throw format_error("blocks must have sizes 2 and 2", lineno);
            } catch (const std::invalid_argument& e) {
                throw format_error(e.what(), lineno);
            }
        });
}

std::vector<PhyloTree> parse_newick_file(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<PhyloTree> out;
    size_t pos = 0;
    int line = 1;
    while (true) {
        // skip whitespace and comment lines between trees
        while (pos < text.size()) {
            if (text[pos] == '\n') {
                ++line;
                ++pos;
            } else if (std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            } else if (text[pos] == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
        if (pos >= text.size()) break;
        size_t semi = text.find(';', pos);
        if (semi == std::string::npos)
            throw newick_parse_error({"missing ';' terminator", line, 1});
        std::string chunk = text.substr(pos, semi - pos + 1);
        try {
            out.push_back(parse_newick(chunk));
        } catch (const newick_parse_error& e) {
            NewickError d = e.detail();
            // chunk-relative line -> file line
            d.line += line - 1;
            throw newick_parse_error(d);
        }
        line += static_cast<int>(std::count(chunk.begin(), chunk.end(), '\n'));
        pos = semi + 1;
    }
    return out;
}

QuintetSystem parse_quintet_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_quintet_file(in);
}

QuartetSystem parse_quartet_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_quartet_file(in);
}

std::vector<PhyloTree> parse_newick_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_newick_file(in);
}

void print_quintet_system(std::ostream& out, const QuintetSystem& q) {
    out << "taxa:";
    for (const auto& t : q.universe()) out << " " << t;
    out << "\n";
    for (const Quintet& e : q.entries_sorted()) out << e.to_string() << "\n";
}

void print_quartet_system(std::ostream& out, const QuartetSystem& s) {
    out << "taxa:";
    for (const auto& t : s.universe()) out << " " << t;
    out << "\n";
    for (const Quartet& e : s.entries_sorted()) out << e.to_string() << "\n";
}

}  // namespace quintree
