#ifndef BCS_REPORT_HPP
#define BCS_REPORT_HPP

#include <string>

#include "bcs/search.hpp"

namespace bcs {

struct RunReport {
    std::string problem;
    std::string algorithm;
    std::string options_echo;  // flattened option settings
    SolveStats stats;
    std::vector<std::string> files_written;
};

// Text export: header "# problem <name> eps <e...> vars <names...>" followed
// by one line per box: "inner|boundary <lo1> <hi1> ... [<running ids>]".
// Numbers are shortest round-trip decimals; re-parsing reproduces the exact
// bounds.
void write_boxes(const PavingResult& result, const NCSP& p,
                 const std::vector<double>& eps, const std::string& path);

// In-memory form of write_boxes (used by the CLI and tests).
std::string boxes_to_text(const PavingResult& result, const NCSP& p,
                          const std::vector<double>& eps);

// Parsed box file.
struct BoxFile {
    std::string problem;
    std::vector<double> eps;
    std::vector<std::string> vars;
    std::vector<Box> inner;
    std::vector<BoundaryBox> boundary;
};
BoxFile parse_boxes(const std::string& text);
BoxFile read_boxes(const std::string& path);

// 2-D SVG rendering: inner boxes dark grey, boundary light grey, axes
// annotated, y axis pointing up. Throws for non-2-D problems.
void write_svg(const PavingResult& result, const Box& domain,
               const std::string& path);

// JSON record of the run statistics and option echo.
void stats_json(const RunReport& report, const std::string& path);
std::string stats_json_text(const RunReport& report);

}  // namespace bcs

#endif  // BCS_REPORT_HPP
