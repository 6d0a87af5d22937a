/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "nestopt/circuit.hpp"

namespace nestopt {

class qc_parse_error : public std::runtime_error {
 public:
  qc_parse_error(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline int parse_bit_token(const std::string& tok, int line) {
  if (tok.size() < 2 || (tok[0] != 's' && tok[0] != 'S'))
    throw qc_parse_error(line, "expected classical bit token 's<k>', got '" + tok + "'");
  for (std::size_t i = 1; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw qc_parse_error(line, "bad classical bit token '" + tok + "'");
  return std::stoi(tok.substr(1));
}

}  // namespace detail

/// Parse a `.qc` document.  The accepted dialect is a superset of what the
/// common benchmark corpora use: `tof` with any arity, `Z` with 1-3 wires,
/// `S*`/`P*`/`T*` inverses, case-insensitive names, `#` comments, and
/// optional extended lines (`prep-y`, `prep-+`, `measx`, `cond`) produced by
/// this tool's own writer.  Unknown dot-directives produce warnings only.
inline Circuit parse_qc(const std::string& text, std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  std::vector<std::string> names;
  std::vector<std::string> input_names;
  bool saw_v = false, saw_i = false, in_body = false, done = false;
  std::vector<std::pair<int, std::vector<std::string>>> body;  // line no + tokens

  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = detail::tokenize(raw);
    if (toks.empty()) continue;
    std::string head = toks[0];

    if (!in_body && head[0] == '.') {
      std::string d = detail::lower(head);
      if (d == ".v") {
        saw_v = true;
        names.assign(toks.begin() + 1, toks.end());
      } else if (d == ".i") {
        saw_i = true;
        input_names.assign(toks.begin() + 1, toks.end());
      } else if (d == ".o" || d == ".c" || d == ".ol") {
        // outputs / constants: not needed for the circuit model
      } else if (warnings) {
        warnings->push_back("line " + std::to_string(lineno) + ": unknown directive '" + head + "'");
      }
      continue;
    }
    if (detail::lower(head) == "begin") {
      if (!saw_v) throw qc_parse_error(lineno, "BEGIN before .v declaration");
      in_body = true;
      continue;
    }
    if (detail::lower(head) == "end") {
      done = true;
      break;
    }
    if (!in_body) {
      if (warnings)
        warnings->push_back("line " + std::to_string(lineno) + ": ignored text before BEGIN");
      continue;
    }
    body.emplace_back(lineno, std::move(toks));
  }
  if (!saw_v) throw qc_parse_error(lineno, "missing .v declaration");
  if (in_body && !done) throw qc_parse_error(lineno, "missing END");

  // Wire order: declared inputs first, remaining wires after.
  std::unordered_map<std::string, int> index;
  std::vector<std::string> ordered;
  if (saw_i) {
    for (const auto& nm : input_names) {
      if (index.count(nm)) throw qc_parse_error(0, "duplicate input name '" + nm + "'");
      index[nm] = static_cast<int>(ordered.size());
      ordered.push_back(nm);
    }
    for (const auto& nm : names) {
      if (!index.count(nm)) {
        index[nm] = static_cast<int>(ordered.size());
        ordered.push_back(nm);
      }
    }
    for (const auto& nm : input_names)
      if (std::find(names.begin(), names.end(), nm) == names.end())
        throw qc_parse_error(0, "input '" + nm + "' not declared in .v");
  } else {
    for (const auto& nm : names) {
      if (index.count(nm)) throw qc_parse_error(0, "duplicate variable name '" + nm + "'");
      index[nm] = static_cast<int>(ordered.size());
      ordered.push_back(nm);
    }
  }

  Circuit c;
  c.n_total = static_cast<int>(ordered.size());
  c.n_inputs = saw_i ? static_cast<int>(input_names.size()) : c.n_total;
  c.labels = ordered;

  auto wire = [&](const std::string& nm, int line) {
    auto it = index.find(nm);
    if (it == index.end()) throw qc_parse_error(line, "undeclared variable '" + nm + "'");
    return it->second;
  };

  int max_bit = -1;
  for (auto& [line, toks] : body) {
    std::string name = toks[0];
    std::string lname = detail::lower(name);
    std::vector<std::string> args(toks.begin() + 1, toks.end());
    auto nargs = args.size();

    auto wires = [&](std::size_t from, std::size_t to) {
      std::vector<int> qs;
      for (std::size_t i = from; i < to; ++i) qs.push_back(wire(args[i], line));
      return qs;
    };

    if (lname == "tof" || lname == "ccx" || lname == "t3" || lname == "t4") {
      if (nargs == 0) throw qc_parse_error(line, "tof needs at least one wire");
      auto qs = wires(0, nargs);
      if (nargs == 1)
        c.push(Gate::x(qs[0]));
      else if (nargs == 2)
        c.push(Gate::cnot(qs[0], qs[1]));
      else if (nargs == 3)
        c.push(Gate::ccnot(qs[0], qs[1], qs[2]));
      else
        c.push(Gate::simple(GateKind::MCT, qs));
    } else if (lname == "cnot" || lname == "cx") {
      if (nargs != 2) throw qc_parse_error(line, "cnot needs exactly two wires");
      auto qs = wires(0, 2);
      c.push(Gate::cnot(qs[0], qs[1]));
    } else if (lname == "not" || lname == "x") {
      if (nargs != 1) throw qc_parse_error(line, "X needs exactly one wire");
      c.push(Gate::x(wire(args[0], line)));
    } else if (lname == "z") {
      if (nargs < 1 || nargs > 3) throw qc_parse_error(line, "Z takes one to three wires");
      auto qs = wires(0, nargs);
      if (nargs == 1)
        c.push(Gate::z(qs[0]));
      else if (nargs == 2)
        c.push(Gate::cz(qs[0], qs[1]));
      else
        c.push(Gate::ccz(qs[0], qs[1], qs[2]));
    } else if (lname == "h") {
      if (nargs != 1) throw qc_parse_error(line, "H needs exactly one wire");
      c.push(Gate::h(wire(args[0], line)));
    } else if (lname == "s" || lname == "p") {
      if (nargs != 1) throw qc_parse_error(line, "S needs exactly one wire");
      c.push(Gate::s(wire(args[0], line)));
    } else if (lname == "s*" || lname == "p*") {
      if (nargs != 1) throw qc_parse_error(line, "S* needs exactly one wire");
      c.push(Gate::sdg(wire(args[0], line)));
    } else if (lname == "t") {
      if (nargs != 1) throw qc_parse_error(line, "T needs exactly one wire");
      c.push(Gate::t(wire(args[0], line)));
    } else if (lname == "t*") {
      if (nargs != 1) throw qc_parse_error(line, "T* needs exactly one wire");
      c.push(Gate::tdg(wire(args[0], line)));
    } else if (lname == "swap") {
      if (nargs != 2) throw qc_parse_error(line, "swap needs exactly two wires");
      auto qs = wires(0, 2);
      c.push(Gate::swap(qs[0], qs[1]));
    } else if (lname == "prep-y") {
      if (nargs != 1) throw qc_parse_error(line, "prep-y needs exactly one wire");
      c.push(Gate::prep_minus_y(wire(args[0], line)));
    } else if (lname == "prep-+") {
      if (nargs != 1) throw qc_parse_error(line, "prep-+ needs exactly one wire");
      c.push(Gate::prep_plus(wire(args[0], line)));
    } else if (lname == "measx") {
      // measx <wire> -> s<k>
      if (nargs != 3 || args[1] != "->") throw qc_parse_error(line, "measx syntax: measx q -> s<k>");
      int b = detail::parse_bit_token(args[2], line);
      max_bit = std::max(max_bit, b);
      c.push(Gate::meas_x(wire(args[0], line), b));
    } else if (lname == "cond") {
      // cond s<k1>^s<k2>... <clifford> <wire>
      if (nargs != 3) throw qc_parse_error(line, "cond syntax: cond s<k1>^... <clifford> q");
      std::vector<int> bits;
      std::string btok;
      std::istringstream bs(args[0]);
      while (std::getline(bs, btok, '^')) {
        int b = detail::parse_bit_token(btok, line);
        max_bit = std::max(max_bit, b);
        bits.push_back(b);
      }
      if (bits.empty()) throw qc_parse_error(line, "cond with empty parity set");
      std::string ck = args[1];  // clifford kinds are case sensitive: S vs S*
      CondKind kind;
      std::string lck = detail::lower(ck);
      if (lck == "x")
        kind = CondKind::X;
      else if (lck == "z")
        kind = CondKind::Z;
      else if (lck == "s")
        kind = CondKind::S;
      else if (lck == "s*")
        kind = CondKind::Sdg;
      else
        throw qc_parse_error(line, "unsupported conditioned clifford '" + ck + "'");
      c.push(Gate::cond(kind, wire(args[2], line), std::move(bits)));
    } else {
      throw qc_parse_error(line, "unknown gate name '" + name + "'");
    }
  }
  c.bit_count = max_bit + 1;
  return c;
}

/// Serialize to `.qc`.  Without `extended`, preparation/measurement/
/// conditioned gates are rejected; gadgets are never serializable.
inline std::string write_qc(const Circuit& c, bool extended = false) {
  std::ostringstream out;
  out << ".v";
  for (const auto& nm : c.labels) out << " " << nm;
  out << "\n";
  if (c.n_inputs < c.n_total) {
    out << ".i";
    for (int i = 0; i < c.n_inputs; ++i) out << " " << c.labels[static_cast<std::size_t>(i)];
    out << "\n";
  }
  out << "\nBEGIN\n";
  auto w = [&](int q) { return c.labels[static_cast<std::size_t>(q)]; };
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::X: out << "X " << w(g.qubits[0]); break;
      case GateKind::Z: out << "Z " << w(g.qubits[0]); break;
      case GateKind::S: out << "S " << w(g.qubits[0]); break;
      case GateKind::Sdg: out << "S* " << w(g.qubits[0]); break;
      case GateKind::T: out << "T " << w(g.qubits[0]); break;
      case GateKind::Tdg: out << "T* " << w(g.qubits[0]); break;
      case GateKind::H: out << "H " << w(g.qubits[0]); break;
      case GateKind::CNOT: out << "tof " << w(g.qubits[0]) << " " << w(g.qubits[1]); break;
      case GateKind::CZ: out << "Z " << w(g.qubits[0]) << " " << w(g.qubits[1]); break;
      case GateKind::SWAP: out << "swap " << w(g.qubits[0]) << " " << w(g.qubits[1]); break;
      case GateKind::CCNOT:
        out << "tof " << w(g.qubits[0]) << " " << w(g.qubits[1]) << " " << w(g.qubits[2]);
        break;
      case GateKind::CCZ:
        out << "Z " << w(g.qubits[0]) << " " << w(g.qubits[1]) << " " << w(g.qubits[2]);
        break;
      case GateKind::MCT: {
        out << "tof";
        for (int q : g.qubits) out << " " << w(q);
        break;
      }
      case GateKind::PrepPlus:
        if (!extended) throw circuit_error("prep-+ requires extended-qc output mode");
        out << "prep-+ " << w(g.qubits[0]);
        break;
      case GateKind::PrepMinusY:
        if (!extended) throw circuit_error("prep-y requires extended-qc output mode");
        out << "prep-y " << w(g.qubits[0]);
        break;
      case GateKind::MeasX:
        if (!extended) throw circuit_error("measx requires extended-qc output mode");
        out << "measx " << w(g.qubits[0]) << " -> s" << g.bit;
        break;
      case GateKind::CondClifford: {
        if (!extended) throw circuit_error("cond requires extended-qc output mode");
        out << "cond ";
        for (std::size_t i = 0; i < g.cond_bits.size(); ++i) {
          if (i) out << "^";
          out << "s" << g.cond_bits[i];
        }
        out << " ";
        switch (g.cond_kind) {
          case CondKind::X: out << "X"; break;
          case CondKind::Z: out << "Z"; break;
          case CondKind::S: out << "S"; break;
          case CondKind::Sdg: out << "S*"; break;
        }
        out << " " << w(g.qubits[0]);
        break;
      }
      case GateKind::Gadget:
        throw circuit_error("phase gadgets are not serializable to .qc");
    }
    out << "\n";
  }
  out << "END\n";
  return out.str();
}

}  // namespace nestopt
