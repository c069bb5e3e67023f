#include "hcl/rtlgen.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace hcl {

namespace {

std::string literal(const BitVec& v) {
  return std::to_string(v.width()) + "'h" + v.to_hex_string();
}

std::string range_decl(unsigned width) {
  return width == 1 ? "" : "[" + std::to_string(width - 1) + ":0] ";
}

class NameTable {
 public:
  std::string claim(const std::string& base) {
    if (used_.insert(base).second) return base;
    for (unsigned k = 0;; ++k) {
      std::string cand = base + "_" + std::to_string(k);
      if (used_.insert(cand).second) return cand;
    }
  }
  void reserve(const std::string& name) { used_.insert(name); }

 private:
  std::set<std::string> used_;
};

// Emits one module; instances reference module names chosen by the caller.
class ModuleWriter {
 public:
  ModuleWriter(const Circuit& c, const std::string& module_name,
               const std::map<uint32_t, std::string>& instance_module_names)
      : c_(c), module_name_(module_name), inst_modules_(instance_module_names) {
    assign_names();
  }

  std::string text() {
    emit_header();
    emit_decls();
    emit_initials();
    emit_body();
    emit_outputs();
    os_ << "endmodule\n";
    return os_.str();
  }

 private:
  const Circuit& c_;
  std::string module_name_;
  const std::map<uint32_t, std::string>& inst_modules_;
  std::map<uint32_t, std::string> names_;
  std::set<uint32_t> case_targets_;  // muxes emitted as case blocks
  std::ostringstream os_;

  static constexpr size_t kTernaryLimit = 4;

  void assign_names() {
    NameTable table;
    // Ports first: their names are already legal and unique.
    for (const Port& p : c_.inputs()) {
      table.reserve(p.name);
      names_[p.uid] = p.name;
    }
    for (const Port& p : c_.outputs()) table.reserve(p.name);
    // Naming hints in uid order, then defaults.
    for (const auto& [uid, hint] : c_.names()) {
      if (names_.count(uid)) continue;
      const Node& n = c_.node(uid);
      if (n.kind == NodeKind::Const || n.kind == NodeKind::Instance) continue;
      names_[uid] = table.claim(legalize_name(hint));
    }
    for (uint32_t uid : c_.reachable_uids()) {
      const Node& n = c_.node(uid);
      if (names_.count(uid)) continue;
      if (n.kind == NodeKind::Const) continue;
      if (n.kind == NodeKind::Instance) {
        names_[uid] = table.claim(legalize_name(n.inst->instance_name));
        continue;
      }
      names_[uid] = table.claim("_" + std::to_string(uid));
    }
    for (uint32_t uid : c_.schedule()) {
      const Node& n = c_.node(uid);
      if (n.kind == NodeKind::Mux && n.operands.size() - 1 > kTernaryLimit)
        case_targets_.insert(uid);
    }
  }

  // Operand reference: a name, or the literal itself for constants.
  std::string ref(uint32_t uid) const {
    const Node& n = c_.node(uid);
    if (n.kind == NodeKind::Const) return literal(n.value);
    return names_.at(uid);
  }

  void emit_header() {
    os_ << "module " << module_name_ << " (\n";
    std::vector<std::string> ports;
    for (const Port& p : c_.inputs()) ports.push_back("  input " + range_decl(p.width) + p.name);
    for (const Port& p : c_.outputs()) ports.push_back("  output " + range_decl(p.width) + p.name);
    for (size_t i = 0; i < ports.size(); ++i) os_ << ports[i] << (i + 1 < ports.size() ? "," : "") << "\n";
    os_ << ");\n";
  }

  void emit_decls() {
    for (uint32_t uid : c_.reachable_uids()) {
      const Node& n = c_.node(uid);
      switch (n.kind) {
        case NodeKind::Input:
        case NodeKind::Const:
        case NodeKind::Instance:
          break;
        case NodeKind::Reg:
          os_ << "  reg " << range_decl(n.width) << names_.at(uid) << ";\n";
          break;
        case NodeKind::Memory:
          os_ << "  reg " << range_decl(n.width) << names_.at(uid) << " [0:"
              << (n.mem->size - 1) << "];\n";
          os_ << "  integer " << names_.at(uid) << "_i;\n";
          break;
        default:
          os_ << (case_targets_.count(uid) ? "  reg " : "  wire ") << range_decl(n.width)
              << names_.at(uid) << ";\n";
          break;
      }
    }
  }

  void emit_initials() {
    for (uint32_t uid : c_.reachable_uids()) {
      const Node& n = c_.node(uid);
      if (n.kind == NodeKind::Reg) {
        os_ << "  initial " << names_.at(uid) << " = " << literal(n.reg->initial) << ";\n";
      } else if (n.kind == NodeKind::Memory) {
        const std::string& m = names_.at(uid);
        os_ << "  initial begin\n";
        os_ << "    for (" << m << "_i = 0; " << m << "_i < " << n.mem->size << "; " << m
            << "_i = " << m << "_i + 1) " << m << "[" << m << "_i] = " << n.width << "'h0;\n";
        os_ << "  end\n";
      }
    }
  }

  std::string mux_ternary(const Node& n) const {
    size_t ncases = n.operands.size() - 1;
    const Node& sel = c_.node(n.operands[0]);
    std::string s = ref(n.operands[0]);
    if (ncases == 2 && sel.width == 1)
      return s + " ? " + ref(n.operands[2]) + " : " + ref(n.operands[1]);
    std::string out;
    for (size_t k = 0; k + 1 < ncases; ++k) {
      out += s + " == " + literal(BitVec::of_int(sel.width, static_cast<long long>(k))) + " ? " +
             ref(n.operands[1 + k]) + " : ";
    }
    out += ref(n.operands[ncases]);
    return out;
  }

  void emit_case_block(uint32_t uid, const Node& n) {
    size_t ncases = n.operands.size() - 1;
    const Node& sel = c_.node(n.operands[0]);
    os_ << "  always @* begin\n";
    os_ << "    case (" << ref(n.operands[0]) << ")\n";
    for (size_t k = 0; k + 1 < ncases; ++k) {
      os_ << "      " << literal(BitVec::of_int(sel.width, static_cast<long long>(k))) << ": "
          << names_.at(uid) << " = " << ref(n.operands[1 + k]) << ";\n";
    }
    os_ << "      default: " << names_.at(uid) << " = " << ref(n.operands[ncases]) << ";\n";
    os_ << "    endcase\n";
    os_ << "  end\n";
  }

  void emit_body() {
    for (uint32_t uid : c_.schedule()) {
      const Node& n = c_.node(uid);
      const char* op = nullptr;
      switch (n.kind) {
        case NodeKind::Wire:
          os_ << "  assign " << names_.at(uid) << " = " << ref(static_cast<uint32_t>(n.wire_driver))
              << ";\n";
          break;
        case NodeKind::Add: op = "+"; break;
        case NodeKind::Sub: op = "-"; break;
        case NodeKind::And: op = "&"; break;
        case NodeKind::Or: op = "|"; break;
        case NodeKind::Xor: op = "^"; break;
        case NodeKind::Eq: op = "=="; break;
        case NodeKind::Lt: op = "<"; break;
        case NodeKind::Mul:
          os_ << "  assign " << names_.at(uid) << " = " << ref(n.operands[0]) << " * "
              << ref(n.operands[1]) << ";\n";
          break;
        case NodeKind::MulSigned:
          os_ << "  assign " << names_.at(uid) << " = $signed(" << ref(n.operands[0])
              << ") * $signed(" << ref(n.operands[1]) << ");\n";
          break;
        case NodeKind::LtSigned:
          os_ << "  assign " << names_.at(uid) << " = $signed(" << ref(n.operands[0])
              << ") < $signed(" << ref(n.operands[1]) << ");\n";
          break;
        case NodeKind::Not:
          os_ << "  assign " << names_.at(uid) << " = ~" << ref(n.operands[0]) << ";\n";
          break;
        case NodeKind::Mux:
          if (case_targets_.count(uid))
            emit_case_block(uid, n);
          else
            os_ << "  assign " << names_.at(uid) << " = " << mux_ternary(n) << ";\n";
          break;
        case NodeKind::Cat: {
          os_ << "  assign " << names_.at(uid) << " = {";
          for (size_t i = 0; i < n.operands.size(); ++i)
            os_ << (i ? ", " : "") << ref(n.operands[i]);
          os_ << "};\n";
          break;
        }
        case NodeKind::Select: {
          const Node& src = c_.node(n.operands[0]);
          if (src.kind == NodeKind::Const) {
            // A literal cannot be indexed; fold the select.
            os_ << "  assign " << names_.at(uid) << " = "
                << literal(select(src.value, n.hi, n.lo)) << ";\n";
          } else {
            os_ << "  assign " << names_.at(uid) << " = " << ref(n.operands[0]) << "["
                << n.hi << ":" << n.lo << "];\n";
          }
          break;
        }
        case NodeKind::MemRead:
          os_ << "  assign " << names_.at(uid) << " = " << names_.at(n.operands[0]) << "["
              << ref(n.operands[1]) << "];\n";
          break;
        case NodeKind::InstOut:
          break;  // driven by the instantiation
        default:
          throw Error(std::string("unexpected node in schedule: ") + node_kind_name(n.kind));
      }
      if (op != nullptr)
        os_ << "  assign " << names_.at(uid) << " = " << ref(n.operands[0]) << " " << op << " "
            << ref(n.operands[1]) << ";\n";
    }

    // Instantiations: output ports drive the InstOut wires.
    std::map<uint32_t, std::vector<std::pair<std::string, uint32_t>>> inst_outs;
    for (uint32_t uid : c_.reachable_uids()) {
      const Node& n = c_.node(uid);
      if (n.kind == NodeKind::InstOut) inst_outs[n.operands[0]].emplace_back(n.name, uid);
    }
    for (uint32_t uid : c_.reachable_uids()) {
      const Node& n = c_.node(uid);
      if (n.kind != NodeKind::Instance) continue;
      os_ << "  " << inst_modules_.at(uid) << " " << names_.at(uid) << " (\n";
      std::vector<std::string> conns;
      for (size_t i = 0; i < n.inst->port_names.size(); ++i)
        conns.push_back("    ." + n.inst->port_names[i] + "(" + ref(n.operands[i]) + ")");
      for (const auto& [port, out_uid] : inst_outs[uid])
        conns.push_back("    ." + port + "(" + names_.at(out_uid) + ")");
      for (size_t i = 0; i < conns.size(); ++i)
        os_ << conns[i] << (i + 1 < conns.size() ? "," : "") << "\n";
      os_ << "  );\n";
    }

    // Sequential processes.
    for (uint32_t uid : c_.sequential()) {
      const Node& n = c_.node(uid);
      if (n.kind == NodeKind::Reg) {
        const std::string& q = names_.at(uid);
        os_ << "  always @(posedge " << ref(n.reg->clock) << ") begin\n";
        std::string d = ref(n.operands[0]);
        bool has_clear = n.reg->clear >= 0;
        bool has_enable = n.reg->enable >= 0;
        if (has_clear && has_enable) {
          os_ << "    if (" << ref(static_cast<uint32_t>(n.reg->clear)) << ") " << q << " <= "
              << literal(n.reg->clear_to) << ";\n";
          os_ << "    else if (" << ref(static_cast<uint32_t>(n.reg->enable)) << ") " << q
              << " <= " << d << ";\n";
        } else if (has_clear) {
          os_ << "    if (" << ref(static_cast<uint32_t>(n.reg->clear)) << ") " << q << " <= "
              << literal(n.reg->clear_to) << ";\n";
          os_ << "    else " << q << " <= " << d << ";\n";
        } else if (has_enable) {
          os_ << "    if (" << ref(static_cast<uint32_t>(n.reg->enable)) << ") " << q << " <= "
              << d << ";\n";
        } else {
          os_ << "    " << q << " <= " << d << ";\n";
        }
        os_ << "  end\n";
      } else {
        const std::string& m = names_.at(uid);
        os_ << "  always @(posedge " << ref(n.mem->clock) << ") begin\n";
        os_ << "    if (" << ref(n.mem->enable) << ") " << m << "[" << ref(n.mem->address)
            << "] <= " << ref(n.mem->data) << ";\n";
        os_ << "  end\n";
      }
    }
  }

  void emit_outputs() {
    for (const Port& p : c_.outputs())
      os_ << "  assign " << p.name << " = " << ref(p.uid) << ";\n";
  }
};

// Hierarchical emission: every instance gets its own module definition,
// emitted before its parent.
class HierarchyWriter {
 public:
  std::string emit_top(const Circuit& c) {
    std::string top_name = modules_.claim(legalize_name(c.name()));
    std::string text = emit_module(c, top_name);
    std::string all;
    for (const std::string& m : chunks_) all += m;
    all += text;
    return all;
  }

 private:
  NameTable modules_;
  std::vector<std::string> chunks_;

  std::string emit_module(const Circuit& c, const std::string& module_name) {
    std::map<uint32_t, std::string> inst_module_names;
    for (uint32_t uid : c.reachable_uids()) {
      const Node& n = c.node(uid);
      if (n.kind != NodeKind::Instance) continue;
      const auto& sub = c.subcircuits().at(n.inst->circuit_name);
      std::string sub_name =
          modules_.claim(legalize_name(n.inst->circuit_name + "_" + n.inst->instance_name));
      chunks_.push_back(emit_module(*sub, sub_name));
      inst_module_names[uid] = sub_name;
    }
    ModuleWriter w(c, module_name, inst_module_names);
    return w.text();
  }
};

}  // namespace

std::string legalize_name(const std::string& hint) {
  std::string s;
  for (char c : hint)
    s.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_');
  if (s.empty()) s = "_";
  if (std::isdigit(static_cast<unsigned char>(s[0]))) s = "_" + s;
  if (is_verilog_keyword(s)) s += "_";
  return s;
}

std::string emit_verilog(const Circuit& circuit, RtlStyle style) {
  if (style == RtlStyle::Flat) {
    auto flat = circuit.flatten();
    std::map<uint32_t, std::string> no_instances;
    ModuleWriter w(*flat, legalize_name(flat->name()), no_instances);
    return w.text();
  }
  HierarchyWriter hw;
  return hw.emit_top(circuit);
}

// ---- lint ----

namespace {

const std::set<std::string>& lint_keywords() {
  static const std::set<std::string> kw = {
      "module", "endmodule", "input",  "output",  "wire", "reg",     "assign", "always",
      "posedge", "begin",    "end",    "if",      "else", "case",    "endcase", "default",
      "initial", "integer",  "for",    "signed"};
  return kw;
}

// Strips sized literals like 7'h2a so their base letters do not read as
// identifiers.
std::string strip_literals(const std::string& line) {
  std::string out;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '\'') {
      out.push_back(' ');
      ++i;
      if (i < line.size()) ++i;  // base character
      while (i < line.size() && (std::isxdigit(static_cast<unsigned char>(line[i])) || line[i] == '_'))
        ++i;
      continue;
    }
    out.push_back(line[i]);
    ++i;
  }
  return out;
}

std::vector<std::string> identifiers_in(const std::string& raw) {
  std::string line = strip_literals(raw);
  std::vector<std::string> ids;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) ||
                                 line[j] == '_' || line[j] == '$'))
        ++j;
      std::string id = line.substr(i, j - i);
      if (!lint_keywords().count(id) && id != "$signed") ids.push_back(id);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < line.size() && std::isalnum(static_cast<unsigned char>(line[i]))) ++i;
    } else {
      ++i;
    }
  }
  return ids;
}

std::string first_word(const std::string& line) {
  size_t a = line.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = line.find_first_of(" \t(", a);
  return line.substr(a, b == std::string::npos ? std::string::npos : b - a);
}

}  // namespace

std::vector<std::string> lint_verilog(const std::string& text) {
  std::vector<std::string> problems;
  std::set<std::string> modules;
  std::set<std::string> declared;
  bool in_header = false;
  int line_no = 0;

  auto declare = [&](const std::string& id, int ln) {
    if (!declared.insert(id).second)
      problems.push_back("line " + std::to_string(ln) + ": duplicate declaration of '" + id + "'");
  };
  auto use = [&](const std::string& id, int ln) {
    if (!declared.count(id))
      problems.push_back("line " + std::to_string(ln) + ": use of undeclared '" + id + "'");
  };

  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    std::string word = first_word(line);
    if (word.empty()) continue;
    if (word == "module") {
      declared.clear();
      auto ids = identifiers_in(line);
      if (!ids.empty()) modules.insert(ids[0]);
      in_header = true;
      continue;
    }
    if (word == "endmodule") continue;
    if (in_header) {
      if (word == ");") {
        in_header = false;
        continue;
      }
      auto ids = identifiers_in(line);
      if (!ids.empty()) declare(ids.back(), line_no);
      if (line.find(");") != std::string::npos) in_header = false;
      continue;
    }
    if (word == "input" || word == "output" || word == "wire" || word == "reg" ||
        word == "integer") {
      auto ids = identifiers_in(line);
      if (ids.empty()) continue;
      // Arrays declare the first identifier; plain declarations the last.
      declare(ids[0], line_no);
      continue;
    }
    if (word == "assign") {
      auto ids = identifiers_in(line);
      for (const std::string& id : ids) use(id, line_no);
      continue;
    }
    if (word == "always" || word == "initial" || word == "begin" || word == "end" ||
        word == "if" || word == "else" || word == "case" || word == "endcase" ||
        word == "default" || word == "for" || line.find("<=") != std::string::npos ||
        line.find("endcase") != std::string::npos) {
      for (const std::string& id : identifiers_in(line)) use(id, line_no);
      continue;
    }
    // Anything else shaped like "Name instance (" is an instantiation.
    if (!lint_keywords().count(word)) {
      if (word[0] == '.') {
        // .port(ref) connection: ref is a use, the port belongs to the sub.
        auto ids = identifiers_in(line);
        for (size_t i = 1; i < ids.size(); ++i) use(ids[i], line_no);
      } else if (line.find('(') != std::string::npos) {
        auto ids = identifiers_in(line);
        if (ids.size() >= 2) {
          if (!modules.count(ids[0]))
            problems.push_back("line " + std::to_string(line_no) + ": unknown module '" + ids[0] +
                               "'");
          declare(ids[1], line_no);
        }
      } else {
        for (const std::string& id : identifiers_in(line)) use(id, line_no);
      }
      continue;
    }
  }
  return problems;
}

}  // namespace hcl
