#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "quintree/quartet.hpp"
#include "quintree/quintet.hpp"
#include "quintree/tree.hpp"

namespace quintree {

// Thrown on malformed system/tree files; carries the 1-based line.
class format_error : public std::runtime_error {
public:
    format_error(std::string msg, int line);
    int line() const { return line_; }

private:
    int line_;
};

// Quintet file: one entry per line, "a b | c d | e" (2,2,1),
// "a b | c d e" (3,2), "a b c d e" (5). '#' comments and blank lines
// ignored. Optional "taxa: ..." header fixes the universe; otherwise it
// is the union of mentioned taxa.
QuintetSystem parse_quintet_file(std::istream& in);
QuintetSystem parse_quintet_file(const std::string& path);
void print_quintet_system(std::ostream& out, const QuintetSystem& q);

// Quartet file: "a b | c d" (2,2) or "a b c d" (4); same conventions.
QuartetSystem parse_quartet_file(std::istream& in);
QuartetSystem parse_quartet_file(const std::string& path);
void print_quartet_system(std::ostream& out, const QuartetSystem& s);

// One or more ';'-terminated Newick trees. Parse errors carry the line.
std::vector<PhyloTree> parse_newick_file(std::istream& in);
std::vector<PhyloTree> parse_newick_file(const std::string& path);

}  // namespace quintree
