#pragma once

// CSV formats of the command-line pipeline.
//
// Trajectory:  t,q1..qn,qd1..qdn,qdd1..qddn,qddd1..qdddn,qdddd1..qddddn
// Loads:       sample,body,W1..W6,Wd1..Wd6,Wdd1..Wdd6
//
// A loads row applies a spatial wrench (moment, force; inertial frame) and
// its first two time derivatives to one body at one sample. `sample` is the
// 0-based row index of the trajectory or `*` for every sample; `body` is
// 1-based. Rows for the same body and sample add up. Wrenches enter the
// interbody wrench recursion with a positive sign: a force along +z on the
// terminal body is added to the wrench transmitted by every joint.

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "screwdyn/dynamics.hpp"
#include "screwdyn/errors.hpp"
#include "screwdyn/kinematics.hpp"

namespace screwdyn {

/// Malformed CSV input.
class CsvError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    std::string_view cell = line.substr(start, pos - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
      cell.remove_prefix(1);
    }
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' ||
                             cell.back() == '\r')) {
      cell.remove_suffix(1);
    }
    out.push_back(cell);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_double(std::string_view cell, const std::string& where) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last) {
    throw CsvError(where + ": not a number: '" + std::string(cell) + "'");
  }
  return v;
}

inline bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

}  // namespace detail

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct TrajectorySamples {
  std::vector<double> times;
  std::vector<JointState4<double>> states;

  int dof() const { return states.empty() ? 0 : states.front().size(); }
  std::size_t size() const { return times.size(); }
};

inline std::string trajectory_header(int n) {
  static const char* prefixes[] = {"q", "qd", "qdd", "qddd", "qdddd"};
  std::string h = "t";
  for (const char* p : prefixes) {
    for (int i = 1; i <= n; ++i) h += "," + std::string(p) + std::to_string(i);
  }
  return h;
}

/// Reads a trajectory CSV; the joint count follows from the header.
inline TrajectorySamples read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!detail::next_content_line(in, line)) {
    throw CsvError("trajectory: empty file");
  }
  const auto header = detail::split_commas(line);
  const int cols = static_cast<int>(header.size());
  if (cols < 6 || (cols - 1) % 5 != 0) {
    throw CsvError("trajectory: header must be " + trajectory_header(1) +
                   " extended to n joints; got " + std::to_string(cols) +
                   " columns");
  }
  const int n = (cols - 1) / 5;
  {
    const std::string expected_text = trajectory_header(n);
    const auto expected = detail::split_commas(expected_text);
    for (int c = 0; c < cols; ++c) {
      if (header[c] != expected[c]) {
        throw CsvError("trajectory: header column " + std::to_string(c + 1) +
                       " is '" + std::string(header[c]) + "', expected '" +
                       std::string(expected[c]) + "'");
      }
    }
  }
  TrajectorySamples out;
  int row = 1;
  while (detail::next_content_line(in, line)) {
    ++row;
    const std::string where = "trajectory line " + std::to_string(row);
    const auto cells = detail::split_commas(line);
    if (static_cast<int>(cells.size()) != cols) {
      throw CsvError(where + ": expected " + std::to_string(cols) +
                     " columns, got " + std::to_string(cells.size()));
    }
    JointState4<double> js = JointState4<double>::Zero(n);
    VectorX<double>* fields[] = {&js.q, &js.qd, &js.qdd, &js.qddd, &js.qdddd};
    for (int f = 0; f < 5; ++f) {
      for (int i = 0; i < n; ++i) {
        (*fields[f])(i) = detail::parse_double(cells[1 + f * n + i], where);
      }
    }
    out.times.push_back(detail::parse_double(cells[0], where));
    out.states.push_back(std::move(js));
  }
  if (out.times.empty()) throw CsvError("trajectory: no samples");
  return out;
}

inline void write_trajectory_csv(std::ostream& out,
                                 const TrajectorySamples& traj) {
  const int n = traj.dof();
  out << trajectory_header(n) << '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& js = traj.states[k];
    out << format_double(traj.times[k]);
    for (const auto* v : {&js.q, &js.qd, &js.qdd, &js.qddd, &js.qdddd}) {
      for (int i = 0; i < n; ++i) out << ',' << format_double((*v)(i));
    }
    out << '\n';
  }
}

/// Parsed loads file. Rows with `*` apply to every sample.
class LoadsTable {
 public:
  LoadsTable() = default;
  explicit LoadsTable(int dof) : dof_(dof) {}

  int dof() const { return dof_; }
  bool empty() const { return all_.bodies.empty() && per_sample_.empty(); }

  /// `sample` < 0 means every sample; `body` is 0-based.
  void add(long sample, int body, const AppliedWrench2<double>& w) {
    if (body < 0 || body >= dof_) {
      throw CsvError("loads: body index " + std::to_string(body + 1) +
                     " outside 1.." + std::to_string(dof_));
    }
    auto& target = sample < 0 ? all_ : per_sample_[sample];
    if (target.bodies.empty()) target = AppliedLoads2<double>::Zero(dof_);
    target.bodies[body].W += w.W;
    target.bodies[body].Wd += w.Wd;
    target.bodies[body].Wdd += w.Wdd;
  }

  /// Largest explicit sample index, or -1.
  long max_sample() const {
    return per_sample_.empty() ? -1 : per_sample_.rbegin()->first;
  }

  /// Loads at one sample; an empty list when nothing applies.
  AppliedLoads2<double> at(long sample) const {
    const auto it = per_sample_.find(sample);
    if (it == per_sample_.end()) return all_;
    if (all_.bodies.empty()) return it->second;
    AppliedLoads2<double> sum = all_;
    for (int i = 0; i < dof_; ++i) {
      sum.bodies[i].W += it->second.bodies[i].W;
      sum.bodies[i].Wd += it->second.bodies[i].Wd;
      sum.bodies[i].Wdd += it->second.bodies[i].Wdd;
    }
    return sum;
  }

 private:
  int dof_ = 0;
  AppliedLoads2<double> all_;
  std::map<long, AppliedLoads2<double>> per_sample_;
};

inline std::string loads_header() {
  std::string h = "sample,body";
  for (const char* p : {"W", "Wd", "Wdd"}) {
    for (int i = 1; i <= 6; ++i) h += "," + std::string(p) + std::to_string(i);
  }
  return h;
}

inline LoadsTable read_loads_csv(std::istream& in, int dof) {
  std::string line;
  if (!detail::next_content_line(in, line)) throw CsvError("loads: empty file");
  const auto header = detail::split_commas(line);
  const std::string expected_text = loads_header();
  const auto expected = detail::split_commas(expected_text);
  if (header != expected) {
    throw CsvError("loads: header must be " + loads_header());
  }
  LoadsTable table(dof);
  int row = 1;
  while (detail::next_content_line(in, line)) {
    ++row;
    const std::string where = "loads line " + std::to_string(row);
    const auto cells = detail::split_commas(line);
    if (cells.size() != expected.size()) {
      throw CsvError(where + ": expected " + std::to_string(expected.size()) +
                     " columns, got " + std::to_string(cells.size()));
    }
    long sample = -1;
    if (cells[0] != "*") {
      const auto [ptr, ec] = std::from_chars(
          cells[0].data(), cells[0].data() + cells[0].size(), sample);
      if (cells[0].empty() || ec != std::errc() ||
          ptr != cells[0].data() + cells[0].size() || sample < 0) {
        throw CsvError(where + ": sample must be a row index >= 0 or '*'");
      }
    }
    int body = 0;
    const auto [ptr, ec] = std::from_chars(
        cells[1].data(), cells[1].data() + cells[1].size(), body);
    if (cells[1].empty() || ec != std::errc() ||
        ptr != cells[1].data() + cells[1].size()) {
      throw CsvError(where + ": body must be an integer");
    }
    AppliedWrench2<double> w;
    for (int c = 0; c < 6; ++c) {
      w.W(c) = detail::parse_double(cells[2 + c], where);
      w.Wd(c) = detail::parse_double(cells[8 + c], where);
      w.Wdd(c) = detail::parse_double(cells[14 + c], where);
    }
    try {
      table.add(sample, body - 1, w);
    } catch (const CsvError& e) {
      throw CsvError(where + ": " + e.what());
    }
  }
  return table;
}

}  // namespace screwdyn
