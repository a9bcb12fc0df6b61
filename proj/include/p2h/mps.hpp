#pragma once

// MPS interchange format: classical section layout (ROWS, COLUMNS, RHS,
// RANGES, BOUNDS) with generated names of at most 8 characters and values
// written with 17 significant digits so a re-read reproduces the program
// exactly. A sidecar "<path>.names" file maps generated names back to the
// program's own row/column names.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "p2h/lp.hpp"

namespace p2h {

namespace detail {
inline std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

inline void write_mps(const LinearProgram& lp, const std::string& path,
                      const std::string& model_name = "P2HMODEL") {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write interchange file: " + path);
  auto rname = [](int i) { return "R" + std::to_string(i + 1); };
  auto cname = [](int j) { return "C" + std::to_string(j + 1); };
  if (lp.num_rows() > 9999999 || lp.num_cols() > 9999999)
    throw std::runtime_error("write_mps: generated names would exceed 8 characters");

  out << "NAME          " << model_name << "\n";
  if (lp.maximize) out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n";
  out << " N  COST\n";
  for (int i = 0; i < lp.num_rows(); ++i)
    out << " " << lp.row_sense[i] << "  " << rname(i) << "\n";

  SparseColumns sc(lp);
  out << "COLUMNS\n";
  char line[96];
  for (int j = 0; j < lp.num_cols(); ++j) {
    if (lp.obj[j] != 0.0) {
      std::snprintf(line, sizeof line, "    %-8s  %-8s  %s\n", cname(j).c_str(), "COST",
                    detail::num17(lp.obj[j]).c_str());
      out << line;
    }
    for (int k = sc.col_start[j]; k < sc.col_start[j + 1]; ++k) {
      std::snprintf(line, sizeof line, "    %-8s  %-8s  %s\n", cname(j).c_str(),
                    rname(sc.row_index[k]).c_str(), detail::num17(sc.value[k]).c_str());
      out << line;
    }
  }

  out << "RHS\n";
  if (lp.obj_constant != 0.0) {
    std::snprintf(line, sizeof line, "    %-8s  %-8s  %s\n", "RHS", "COST",
                  detail::num17(-lp.obj_constant).c_str());
    out << line;
  }
  for (int i = 0; i < lp.num_rows(); ++i) {
    if (lp.rhs[i] == 0.0) continue;
    std::snprintf(line, sizeof line, "    %-8s  %-8s  %s\n", "RHS", rname(i).c_str(),
                  detail::num17(lp.rhs[i]).c_str());
    out << line;
  }

  out << "BOUNDS\n";
  for (int j = 0; j < lp.num_cols(); ++j) {
    double lb = lp.col_lower[j], ub = lp.col_upper[j];
    auto emit = [&](const char* kind, bool with_value, double v) {
      if (with_value)
        std::snprintf(line, sizeof line, " %-2s %-8s  %-8s  %s\n", kind, "BND",
                      cname(j).c_str(), detail::num17(v).c_str());
      else
        std::snprintf(line, sizeof line, " %-2s %-8s  %-8s\n", kind, "BND", cname(j).c_str());
      out << line;
    };
    bool lb_inf = std::isinf(lb), ub_inf = std::isinf(ub);
    if (!lb_inf && !ub_inf && lb == ub) {
      emit("FX", true, lb);
    } else if (lb_inf && ub_inf) {
      emit("FR", false, 0);
    } else {
      if (lb_inf) emit("MI", false, 0);
      else if (lb != 0.0) emit("LO", true, lb);
      if (!ub_inf) emit("UP", true, ub);
    }
  }
  out << "ENDATA\n";
  if (!out) throw std::runtime_error("write failed: " + path);

  std::ofstream names(path + ".names");
  if (!names) throw std::runtime_error("cannot write name map: " + path + ".names");
  names << "kind\tshort\tname\n";
  names << "row\tCOST\t<objective>\n";
  for (int i = 0; i < lp.num_rows(); ++i)
    names << "row\t" << rname(i) << "\t"
          << (i < static_cast<int>(lp.row_names.size()) ? lp.row_names[i] : "") << "\n";
  for (int j = 0; j < lp.num_cols(); ++j)
    names << "col\t" << cname(j) << "\t"
          << (j < static_cast<int>(lp.col_names.size()) ? lp.col_names[j] : "") << "\n";
}

// Reads the subset of MPS this project writes (plus LO/UP/FX/FR/MI/PL/BV-free
// bound forms and an optional OBJSENSE section). Nonempty RANGES are rejected.
inline LinearProgram read_mps(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open interchange file: " + path);
  LinearProgram lp;
  enum Section { none, rows, columns, rhs, ranges, bounds, done } sec = none;
  bool objsense_pending = false;
  std::string obj_row;
  std::vector<std::string> row_order;
  std::string linebuf;
  size_t lineno = 0;
  std::map<std::string, int> row_of_name, col_of_name;

  auto bad = [&](const std::string& msg) {
    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + msg);
  };
  auto tokenize = [](const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
  };

  while (std::getline(in, linebuf)) {
    ++lineno;
    if (linebuf.empty() || linebuf[0] == '*') continue;
    bool header = linebuf[0] != ' ' && linebuf[0] != '\t';
    auto tok = tokenize(linebuf);
    if (tok.empty()) continue;
    if (header) {
      objsense_pending = false;
      const std::string& h = tok[0];
      if (h == "NAME") continue;
      if (h == "OBJSENSE") { objsense_pending = true; continue; }
      if (h == "ROWS") { sec = rows; continue; }
      if (h == "COLUMNS") { sec = columns; continue; }
      if (h == "RHS") { sec = rhs; continue; }
      if (h == "RANGES") { sec = ranges; continue; }
      if (h == "BOUNDS") { sec = bounds; continue; }
      if (h == "ENDATA") { sec = done; break; }
      bad("unknown section '" + h + "'");
    }
    if (objsense_pending) {
      if (tok[0] == "MAX" || tok[0] == "MAXIMIZE") lp.maximize = true;
      else if (tok[0] == "MIN" || tok[0] == "MINIMIZE") lp.maximize = false;
      else bad("bad OBJSENSE value");
      objsense_pending = false;
      continue;
    }
    switch (sec) {
      case rows: {
        if (tok.size() != 2) bad("ROWS line needs a type and a name");
        char t = tok[0][0];
        if (t == 'N') {
          if (obj_row.empty()) obj_row = tok[1];
          // extra free rows are ignored
        } else if (t == 'L' || t == 'G' || t == 'E') {
          row_of_name[tok[1]] = lp.add_row(tok[1], t, 0.0);
        } else {
          bad("unknown row type '" + tok[0] + "'");
        }
        break;
      }
      case columns: {
        if (tok.size() != 3 && tok.size() != 5) bad("COLUMNS line needs name/row/value pairs");
        const std::string& col = tok[0];
        auto it = col_of_name.find(col);
        int j = it != col_of_name.end()
                    ? it->second
                    : (col_of_name[col] = lp.add_col(col, 0.0, kInf, 0.0));
        for (size_t f = 1; f + 1 < tok.size(); f += 2) {
          double v = std::stod(tok[f + 1]);
          if (tok[f] == obj_row) {
            lp.obj[j] = v;
          } else {
            auto rit = row_of_name.find(tok[f]);
            if (rit == row_of_name.end()) bad("unknown row '" + tok[f] + "'");
            lp.add_entry(rit->second, j, v);
          }
        }
        break;
      }
      case rhs: {
        if (tok.size() != 3 && tok.size() != 5) bad("RHS line needs set/row/value");
        for (size_t f = 1; f + 1 < tok.size(); f += 2) {
          double v = std::stod(tok[f + 1]);
          if (tok[f] == obj_row) {
            lp.obj_constant = -v;
          } else {
            auto rit = row_of_name.find(tok[f]);
            if (rit == row_of_name.end()) bad("unknown row '" + tok[f] + "'");
            lp.rhs[rit->second] = v;
          }
        }
        break;
      }
      case ranges:
        bad("RANGES entries are not supported");
        break;
      case bounds: {
        if (tok.size() < 3) bad("BOUNDS line needs kind/set/column");
        const std::string& kind = tok[0];
        auto cit = col_of_name.find(tok[2]);
        if (cit == col_of_name.end()) bad("unknown column '" + tok[2] + "'");
        int j = cit->second;
        double v = tok.size() > 3 ? std::stod(tok[3]) : 0.0;
        if (kind == "LO") lp.col_lower[j] = v;
        else if (kind == "UP") lp.col_upper[j] = v;
        else if (kind == "FX") { lp.col_lower[j] = v; lp.col_upper[j] = v; }
        else if (kind == "FR") { lp.col_lower[j] = -kInf; lp.col_upper[j] = kInf; }
        else if (kind == "MI") lp.col_lower[j] = -kInf;
        else if (kind == "PL") lp.col_upper[j] = kInf;
        else bad("unknown bound kind '" + kind + "'");
        break;
      }
      default:
        bad("data line outside any section");
    }
  }
  if (sec != done) bad("missing ENDATA");
  return lp;
}

}  // namespace p2h
