#include "bcs/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bcs {

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

double parse_double_tok(const std::string& tok) {
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw std::runtime_error("bad number '" + tok + "' in box file");
    return v;
}

}  // namespace

std::string boxes_to_text(const PavingResult& result, const NCSP& p,
                          const std::vector<double>& eps) {
    std::string s = "# problem " + p.name + " eps";
    for (double e : eps) s += " " + format_double(e);
    s += " vars";
    for (const auto& v : p.var_names) s += " " + v;
    s += "\n";
    for (const Box& b : result.inner) {
        s += "inner";
        for (const auto& c : b.comps)
            s += " " + format_double(c.lo) + " " + format_double(c.hi);
        s += "\n";
    }
    for (const BoundaryBox& b : result.boundary) {
        s += "boundary";
        for (const auto& c : b.box.comps)
            s += " " + format_double(c.lo) + " " + format_double(c.hi);
        for (int id : b.running) s += " " + std::to_string(id);
        s += "\n";
    }
    return s;
}

void write_boxes(const PavingResult& result, const NCSP& p,
                 const std::vector<double>& eps, const std::string& path) {
    write_file(path, boxes_to_text(result, p, eps));
}

BoxFile parse_boxes(const std::string& text) {
    BoxFile f;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "#") {
            std::string key;
            ls >> key;  // "problem"
            if (key != "problem") throw std::runtime_error("bad box file header");
            ls >> f.problem;
            ls >> key;  // "eps"
            if (key != "eps") throw std::runtime_error("bad box file header");
            while (ls >> tok) {
                if (tok == "vars") break;
                f.eps.push_back(parse_double_tok(tok));
            }
            while (ls >> tok) f.vars.push_back(tok);
            have_header = true;
            continue;
        }
        if (!have_header) throw std::runtime_error("box file missing header");
        bool inner = tok == "inner";
        if (!inner && tok != "boundary")
            throw std::runtime_error("bad box line kind '" + tok + "'");
        std::vector<std::string> toks;
        while (ls >> tok) toks.push_back(tok);
        std::size_t d = f.vars.size();
        if (toks.size() < 2 * d)
            throw std::runtime_error("short box line");
        Box b(d);
        for (std::size_t i = 0; i < d; ++i) {
            b[i] = Interval(parse_double_tok(toks[2 * i]),
                            parse_double_tok(toks[2 * i + 1]));
        }
        if (inner) {
            if (toks.size() != 2 * d)
                throw std::runtime_error("trailing tokens on inner line");
            f.inner.push_back(std::move(b));
        } else {
            BoundaryBox bb;
            bb.box = std::move(b);
            for (std::size_t i = 2 * d; i < toks.size(); ++i)
                bb.running.push_back((int)parse_double_tok(toks[i]));
            f.boundary.push_back(std::move(bb));
        }
    }
    if (!have_header) throw std::runtime_error("box file missing header");
    return f;
}

BoxFile read_boxes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_boxes(ss.str());
}

void write_svg(const PavingResult& result, const Box& domain,
               const std::string& path) {
    if (domain.size() != 2)
        throw std::invalid_argument("SVG export supports 2-D problems only");
    double x0 = domain[0].lo, y0 = domain[1].lo;
    double wx = domain[0].width(), wy = domain[1].width();
    const double W = 800.0;
    double scale = W / wx;
    double H = wy * scale;
    const double margin = 40.0;
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         format_double(W + 2 * margin) + "\" height=\"" +
         format_double(H + 2 * margin) + "\" viewBox=\"0 0 " +
         format_double(W + 2 * margin) + " " + format_double(H + 2 * margin) +
         "\">\n";
    // y axis flipped to mathematical orientation
    auto rect = [&](const Box& b, const char* fill) {
        double rx = margin + (b[0].lo - x0) * scale;
        double ry = margin + H - (b[1].hi - y0) * scale;
        double rw = b[0].width() * scale;
        double rh = b[1].width() * scale;
        s += "<rect x=\"" + format_double(rx) + "\" y=\"" + format_double(ry) +
             "\" width=\"" + format_double(rw) + "\" height=\"" +
             format_double(rh) + "\" fill=\"" + fill + "\"/>\n";
    };
    for (const BoundaryBox& b : result.boundary) rect(b.box, "#c8c8c8");
    for (const Box& b : result.inner) rect(b, "#555555");
    // axes with corner annotations
    s += "<rect x=\"" + format_double(margin) + "\" y=\"" + format_double(margin) +
         "\" width=\"" + format_double(W) + "\" height=\"" + format_double(H) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
    auto label = [&](double px, double py, const std::string& text) {
        s += "<text x=\"" + format_double(px) + "\" y=\"" + format_double(py) +
             "\" font-size=\"12\">" + text + "</text>\n";
    };
    label(margin, margin + H + 14, format_double(domain[0].lo));
    label(margin + W - 30, margin + H + 14, format_double(domain[0].hi));
    label(2, margin + H, format_double(domain[1].lo));
    label(2, margin + 10, format_double(domain[1].hi));
    s += "</svg>\n";
    write_file(path, s);
}

std::string stats_json_text(const RunReport& report) {
    nlohmann::json j;
    j["problem"] = report.problem;
    j["algorithm"] = report.algorithm;
    j["options"] = report.options_echo;
    const SolveStats& s = report.stats;
    j["wall_seconds"] = s.wall_seconds;
    j["inner_boxes"] = s.inner_count;
    j["boundary_boxes"] = s.boundary_count;
    j["dr_calls"] = s.dr_calls;
    j["cb_calls"] = s.cb_calls;
    j["ds_splits"] = s.ds_splits;
    j["bs_splits"] = s.bs_splits;
    j["nodes_expanded"] = s.nodes_expanded;
    j["inner_volume"] = (double)s.inner_volume;
    j["boundary_volume"] = (double)s.boundary_volume;
    j["outer_volume"] = (double)s.outer_volume;
    if (s.ratio >= 0)
        j["ratio"] = s.ratio;
    else
        j["ratio"] = nullptr;
    for (const auto& f : report.files_written) j["files"].push_back(f);
    return j.dump(2) + "\n";
}

void stats_json(const RunReport& report, const std::string& path) {
    write_file(path, stats_json_text(report));
}

}  // namespace bcs
