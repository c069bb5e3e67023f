#include "hcl/waveform.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hcl {

namespace {

constexpr const char* kHi = "─";     // ─
constexpr const char* kRise = "┌";   // ┌
constexpr const char* kFallT = "┐";  // ┐
constexpr const char* kFallB = "└";  // └
constexpr const char* kRiseB = "┘";  // ┘
constexpr const char* kSep = "│";    // │
constexpr const char* kEllipsis = "…";

// Glyph-counting append: real columns, not bytes.
struct Line {
  std::string text;
  size_t cols = 0;
  void put(const char* glyph) {
    text += glyph;
    ++cols;
  }
  void put(char c) {
    text += c;
    ++cols;
  }
  void put(const std::string& s) {
    for (char c : s) put(c);
  }
  void pad_to(size_t n) {
    while (cols < n) put(' ');
  }
};

size_t u8_length(const std::string& s) {
  size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

std::string format_value(const BitVec& v, Radix radix) {
  switch (radix) {
    case Radix::Hex: return v.to_hex_string();
    case Radix::Dec: return v.to_decimal_string();
    case Radix::Bin: return v.to_binary_string();
  }
  return v.to_hex_string();
}

std::string vcd_id(size_t n) {
  std::string s;
  do {
    s.push_back(static_cast<char>(33 + n % 94));
    n /= 94;
  } while (n > 0);
  return s;
}

}  // namespace

WaveTrace::WaveTrace(Simulator& sim) {
  if (sim.cycle_count() != 0) throw SimError("trace attached to a running simulator");
  const Circuit& c = sim.circuit();
  circuit_name_ = c.name();

  auto add_row = [&](const std::string& name, uint32_t uid, unsigned width) {
    rows_.push_back(Row{name, width, uid, {}});
  };
  std::vector<Port> ins = c.inputs(), outs = c.outputs();
  auto by_name = [](const Port& a, const Port& b) { return a.name < b.name; };
  std::sort(ins.begin(), ins.end(), by_name);
  std::sort(outs.begin(), outs.end(), by_name);
  std::set<uint32_t> port_uids;
  for (const Port& p : ins) {
    add_row(p.name, p.uid, p.width);
    port_uids.insert(p.uid);
  }
  for (const Port& p : outs) {
    add_row(p.name, p.uid, p.width);
    port_uids.insert(p.uid);
  }
  std::vector<std::pair<std::string, uint32_t>> internals;
  for (const auto& [uid, name] : c.names())
    if (!port_uids.count(uid)) internals.emplace_back(name, uid);
  std::sort(internals.begin(), internals.end());
  for (const auto& [name, uid] : internals) add_row(name, uid, c.node(uid).width);

  sim.set_cycle_observer([this](const Simulator& s) {
    for (Row& r : rows_) r.samples.push_back(s.value_of(r.uid));
  });
  sim.set_reset_observer([this]() { resets_.push_back(cycles()); });
}

std::string WaveTrace::render(const RenderConfig& cfg) const {
  if (rows_.empty() || cycles() == 0) throw Error("render of empty trace");
  if (cfg.wave_width < 1) throw Error("wave_width must be at least 1");
  const unsigned cell = cfg.wave_width + 1;

  size_t name_col = 4;
  for (const Row& r : rows_) name_col = std::max(name_col, u8_length(r.name));
  name_col = std::min<size_t>(name_col, 20);

  if (cfg.display_width < name_col + 1 + cell)
    throw Error("display_width " + std::to_string(cfg.display_width) +
                " cannot fit the name column plus one cycle");
  size_t area = cfg.display_width - name_col - 1;
  size_t start = std::min<size_t>(cfg.start_cycle, cycles());
  size_t columns = std::min<size_t>(cycles() - start, area / cell);

  std::vector<std::string> lines;
  for (const Row& r : rows_) {
    Line l1, l2;
    if (u8_length(r.name) > name_col) {
      // keep the first name_col-1 glyphs, then an ellipsis
      size_t kept = 0;
      for (size_t i = 0; i < r.name.size();) {
        unsigned char c = r.name[i];
        size_t len = (c & 0x80) == 0 ? 1 : (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : 4;
        if (kept + 1 > name_col - 1) break;
        l1.text += r.name.substr(i, len);
        ++l1.cols;
        ++kept;
        i += len;
      }
      l1.put(kEllipsis);
    } else {
      l1.put(r.name);
    }
    l1.pad_to(name_col);
    l1.put(' ');
    l2.pad_to(name_col);
    l2.put(' ');

    if (r.width == 1) {
      for (size_t col = 0; col < columns; ++col) {
        size_t cyc = start + col;
        bool v = r.samples[cyc].get_bit(0);
        bool prev = cyc == 0 ? v : r.samples[cyc - 1].get_bit(0);
        if (v) {
          l1.put(prev ? kHi : kRise);
          l2.put(!prev ? kRiseB : ' ');
        } else {
          l1.put(prev ? kFallT : ' ');
          l2.put(prev ? kFallB : kHi);
        }
        for (unsigned k = 1; k < cell; ++k) {
          l1.put(v ? kHi : ' ');
          l2.put(v ? ' ' : kHi);
        }
      }
    } else {
      size_t col = 0;
      while (col < columns) {
        size_t cyc = start + col;
        size_t len = 1;
        while (col + len < columns && r.samples[start + col + len] == r.samples[cyc]) ++len;
        bool leading_sep = col > 0;
        size_t space = len * cell - (leading_sep ? 1 : 0);
        if (leading_sep) l1.put(kSep);
        std::string text = format_value(r.samples[cyc], cfg.radix);
        if (text.size() > space) text = text.substr(0, space - 1) + ".";
        l1.put(text);
        for (size_t k = text.size(); k < space; ++k) l1.put(' ');
        col += len;
      }
      for (size_t k = 0; k < columns * cell; ++k) l2.put(kHi);
    }
    lines.push_back(l1.text);
    lines.push_back(l2.text);
  }

  if (cfg.display_height > 0 && lines.size() > cfg.display_height)
    lines.resize(cfg.display_height);
  std::string out;
  for (const std::string& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

std::string WaveTrace::export_vcd() const {
  if (rows_.empty()) throw Error("VCD export of empty signal list");
  if (cycles() == 0) throw Error("VCD export of empty trace");
  std::ostringstream os;
  os << "$timescale 1ns $end\n";
  os << "$scope module " << circuit_name_ << " $end\n";
  for (size_t i = 0; i < rows_.size(); ++i)
    os << "$var wire " << rows_[i].width << " " << vcd_id(i) << " " << rows_[i].name << " $end\n";
  os << "$upscope $end\n";
  os << "$enddefinitions $end\n";
  size_t n = cycles();
  for (size_t t = 0; t < n; ++t) {
    os << "#" << t << "\n";
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Row& r = rows_[i];
      if (t > 0 && r.samples[t] == r.samples[t - 1]) continue;
      if (r.width == 1)
        os << (r.samples[t].get_bit(0) ? '1' : '0') << vcd_id(i) << "\n";
      else
        os << "b" << r.samples[t].to_binary_string() << " " << vcd_id(i) << "\n";
    }
  }
  os << "#" << n << "\n";
  return os.str();
}

VcdData parse_vcd(const std::string& text) {
  VcdData data;
  std::map<std::string, size_t> by_id;
  std::istringstream is(text);
  std::string tok;
  // Header
  while (is >> tok) {
    if (tok == "$var") {
      std::string type, width_s, id, name, end;
      is >> type >> width_s >> id >> name >> end;
      by_id[id] = data.signals.size();
      data.signals.push_back(VcdSignal{name, static_cast<unsigned>(std::stoul(width_s)), id});
    } else if (tok == "$enddefinitions") {
      is >> tok;  // $end
      break;
    }
  }
  std::vector<BitVec> current;
  for (const VcdSignal& s : data.signals) current.emplace_back(s.width);
  data.samples.assign(data.signals.size(), {});
  int64_t time = -1;
  auto flush_until = [&](int64_t new_time) {
    for (int64_t t = std::max<int64_t>(time, 0); t < new_time; ++t)
      for (size_t i = 0; i < current.size(); ++i) data.samples[i].push_back(current[i]);
  };
  while (is >> tok) {
    if (tok[0] == '#') {
      int64_t new_time = std::stoll(tok.substr(1));
      if (time >= 0) flush_until(new_time);
      time = new_time;
    } else if (tok[0] == 'b') {
      std::string id;
      is >> id;
      current[by_id.at(id)] = BitVec::of_binary_string(tok.substr(1));
    } else if (tok[0] == '0' || tok[0] == '1') {
      std::string id = tok.substr(1);
      BitVec v(1);
      if (tok[0] == '1') v.set_bit(0, true);
      current[by_id.at(id)] = v;
    }
  }
  data.cycles = data.samples.empty() ? 0 : data.samples[0].size();
  return data;
}

bool golden_update_from_env() {
  const char* v = std::getenv("GOLDEN_UPDATE");
  return v != nullptr && std::string(v) == "1";
}

ExpectResult expect(const WaveTrace& trace, const RenderConfig& cfg,
                    const std::string& golden_path, bool update) {
  std::string actual = trace.render(cfg);
  bool do_update = update || golden_update_from_env();
  std::ifstream in(golden_path, std::ios::binary);
  if (!in) {
    if (!do_update) throw Error("missing golden file '" + golden_path + "' (run in update mode)");
    std::filesystem::path p(golden_path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(golden_path, std::ios::binary);
    out << actual;
    return ExpectResult{true, true, ""};
  }
  std::stringstream buf;
  buf << in.rdbuf();
  std::string expected = buf.str();
  if (expected == actual) return ExpectResult{true, false, ""};
  if (do_update) {
    std::ofstream out(golden_path, std::ios::binary);
    out << actual;
    return ExpectResult{true, true, ""};
  }
  return ExpectResult{false, false, unified_diff(expected, actual)};
}

std::string unified_diff(const std::string& expected, const std::string& actual) {
  auto split = [](const std::string& s) {
    std::vector<std::string> lines;
    size_t pos = 0;
    while (pos <= s.size()) {
      size_t nl = s.find('\n', pos);
      if (nl == std::string::npos) {
        if (pos < s.size()) lines.push_back(s.substr(pos));
        break;
      }
      lines.push_back(s.substr(pos, nl - pos));
      pos = nl + 1;
    }
    return lines;
  };
  std::vector<std::string> a = split(expected), b = split(actual);

  // LCS table; inputs here are small snapshot files.
  size_t n = a.size(), m = b.size();
  std::vector<std::vector<uint32_t>> lcs(n + 1, std::vector<uint32_t>(m + 1, 0));
  for (size_t i = n; i-- > 0;)
    for (size_t j = m; j-- > 0;)
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);

  struct Op {
    char tag;  // ' ', '-', '+'
    const std::string* line;
  };
  std::vector<Op> ops;
  size_t i = 0, j = 0;
  while (i < n && j < m) {
    if (a[i] == b[j]) {
      ops.push_back({' ', &a[i]});
      ++i, ++j;
    } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
      ops.push_back({'-', &a[i]});
      ++i;
    } else {
      ops.push_back({'+', &b[j]});
      ++j;
    }
  }
  while (i < n) ops.push_back({'-', &a[i++]});
  while (j < m) ops.push_back({'+', &b[j++]});

  const size_t kContext = 3;
  std::ostringstream os;
  os << "--- expected\n+++ actual\n";
  size_t k = 0, a_line = 0, b_line = 0;
  while (k < ops.size()) {
    if (ops[k].tag == ' ') {
      ++a_line, ++b_line, ++k;
      continue;
    }
    // Found a change; open a hunk with leading context.
    size_t hunk_start = k;
    size_t lead = 0;
    while (hunk_start > 0 && ops[hunk_start - 1].tag == ' ' && lead < kContext) {
      --hunk_start;
      ++lead;
    }
    size_t hunk_end = k;
    size_t quiet = 0;
    while (hunk_end < ops.size()) {
      if (ops[hunk_end].tag == ' ') {
        ++quiet;
        if (quiet > kContext * 2) break;
      } else {
        quiet = 0;
      }
      ++hunk_end;
    }
    while (hunk_end > hunk_start && quiet > kContext) {
      --hunk_end;
      --quiet;
    }
    size_t a_start = a_line - lead, b_start = b_line - lead;
    size_t a_count = 0, b_count = 0;
    for (size_t t = hunk_start; t < hunk_end; ++t) {
      if (ops[t].tag != '+') ++a_count;
      if (ops[t].tag != '-') ++b_count;
    }
    os << "@@ -" << (a_start + 1) << "," << a_count << " +" << (b_start + 1) << "," << b_count
       << " @@\n";
    for (size_t t = hunk_start; t < hunk_end; ++t) os << ops[t].tag << *ops[t].line << "\n";
    for (size_t t = k; t < hunk_end; ++t) {
      if (ops[t].tag != '+') ++a_line;
      if (ops[t].tag != '-') ++b_line;
    }
    k = hunk_end;
  }
  return os.str();
}

}  // namespace hcl
