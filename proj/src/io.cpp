#include "turan/io.hpp"

#include <algorithm>
#include <cctype>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "turan/errors.hpp"

namespace turan {

namespace {
using json = nlohmann::json;
}

std::string rat_to_fraction(const Rat& q) {
  Int num = boost::multiprecision::numerator(q);
  Int den = boost::multiprecision::denominator(q);
  std::string out = num.convert_to<std::string>();
  if (den != 1) out += "/" + den.convert_to<std::string>();
  return out;
}

Rat rat_from_fraction(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_from_fraction: empty string");
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("rat_from_fraction: nonpositive denominator");
    return Rat(num, den);
  } catch (const std::runtime_error& e) {  // cpp_int parse failure
    throw std::invalid_argument(std::string("rat_from_fraction: ") + e.what());
  }
}

std::string now_utc_iso8601() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SystemFile make_system_file(const TuranSystem& sys, const ConstructionConfig& cfg,
                            const std::string& timestamp) {
  SystemFile f;
  f.n = sys.n();
  f.r = sys.r();
  f.s = sys.s();
  f.R = cfg.R;
  f.lemma = to_string(cfg.lemma);
  f.mode = to_string(cfg.mode);
  f.beta = rat_to_fraction(cfg.beta);
  f.c = rat_to_fraction(cfg.c);
  f.mu = rat_to_fraction(cfg.mu);
  f.seed = cfg.seed;
  f.size = sys.size();
  f.ledger_bound = rat_to_fraction(sys.bound());
  f.construction_timestamp = timestamp;
  f.edges = sys.graph().edges();  // colex order; throws when not materialized
  return f;
}

namespace {

void append_json_string(std::string& out, const std::string& s) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

}  // namespace

std::string serialize_system_file(const SystemFile& f) {
  std::string out;
  out.reserve(256 + f.edges.size() * (static_cast<std::size_t>(f.r) * 4 + 4));
  out += "{\n";
  out += "  \"format_version\": " + std::to_string(f.format_version) + ",\n";
  out += "  \"n\": " + std::to_string(f.n) + ",\n";
  out += "  \"r\": " + std::to_string(f.r) + ",\n";
  out += "  \"s\": " + std::to_string(f.s) + ",\n";
  out += "  \"meta\": {\n";
  out += "    \"R\": " + std::to_string(f.R) + ",\n";
  out += "    \"lemma\": ";
  append_json_string(out, f.lemma);
  out += ",\n    \"mode\": ";
  append_json_string(out, f.mode);
  out += ",\n    \"beta\": ";
  append_json_string(out, f.beta);
  out += ",\n    \"c\": ";
  append_json_string(out, f.c);
  out += ",\n    \"mu\": ";
  append_json_string(out, f.mu);
  out += ",\n    \"seed\": " + std::to_string(f.seed) + ",\n";
  out += "    \"size\": " + std::to_string(f.size) + ",\n";
  out += "    \"ledger_bound\": ";
  append_json_string(out, f.ledger_bound);
  out += ",\n    \"construction_timestamp\": ";
  append_json_string(out, f.construction_timestamp);
  out += "\n  },\n";
  out += "  \"edges\": [";
  for (std::size_t i = 0; i < f.edges.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "[";
    const Subset& e = f.edges[i];
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (j) out += ",";
      out += std::to_string(e[j]);
    }
    out += "]";
  }
  out += f.edges.empty() ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

void write_system_file(const SystemFile& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw SystemFileError("cannot open for writing: " + path);
  std::string body = serialize_system_file(f);
  os.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!os) throw SystemFileError("write failed: " + path);
}

namespace {

// Shared validation; fills rank-sorted edges and checks the size field.
void validate_system_file(SystemFile& f) {
  if (f.format_version != 1)
    throw SystemFileError("unsupported format_version " + std::to_string(f.format_version));
  if (f.n < 0 || f.r < 0 || f.s < f.r)
    throw SystemFileError("need n >= 0 and 0 <= r <= s");
  if (f.size != f.edges.size())
    throw SystemFileError("size field does not match edge count");
  std::uint64_t prev_rank = 0;
  bool first = true;
  for (auto& e : f.edges) {
    if (static_cast<int>(e.size()) != f.r)
      throw SystemFileError("edge of wrong uniformity");
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] < 1 || e[j] > f.n) throw SystemFileError("vertex out of range");
      if (j > 0 && e[j] <= e[j - 1])
        throw SystemFileError("edge vertices not strictly increasing");
    }
    std::uint64_t rank = rank_colex(e);
    if (!first && rank <= prev_rank)
      throw SystemFileError("edges not in colex order or duplicated");
    prev_rank = rank;
    first = false;
  }
}

}  // namespace

SystemFile read_system_file_json(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SystemFileError("cannot open: " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw SystemFileError(std::string("JSON parse error: ") + e.what());
  }
  SystemFile f;
  try {
    f.format_version = j.at("format_version").get<int>();
    f.n = j.at("n").get<int>();
    f.r = j.at("r").get<int>();
    f.s = j.at("s").get<int>();
    const json& m = j.at("meta");
    f.R = m.at("R").get<int>();
    f.lemma = m.at("lemma").get<std::string>();
    f.mode = m.at("mode").get<std::string>();
    f.beta = m.at("beta").get<std::string>();
    f.c = m.at("c").get<std::string>();
    f.mu = m.at("mu").get<std::string>();
    f.seed = m.at("seed").get<std::uint64_t>();
    f.size = m.at("size").get<std::uint64_t>();
    f.ledger_bound = m.at("ledger_bound").get<std::string>();
    f.construction_timestamp = m.at("construction_timestamp").get<std::string>();
    for (const json& je : j.at("edges")) {
      Subset e;
      for (const json& jv : je) e.push_back(jv.get<int>());
      f.edges.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw SystemFileError(std::string("missing or mistyped field: ") + e.what());
  }
  validate_system_file(f);
  return f;
}

SystemFile read_system_file_text(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw SystemFileError("cannot open: " + path);
  SystemFile f;
  f.mode = "import";
  std::string line;
  if (!std::getline(is, line)) throw SystemFileError("empty file: " + path);
  {
    std::istringstream hs(line);
    if (!(hs >> f.n >> f.r >> f.s >> f.size))
      throw SystemFileError("header must be: n r s size");
    std::string extra;
    if (hs >> extra) throw SystemFileError("trailing tokens in header");
  }
  f.R = f.s - f.r;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream es(line);
    Subset e;
    int v;
    while (es >> v) e.push_back(v);
    if (!es.eof()) throw SystemFileError("bad vertex token in: " + line);
    f.edges.push_back(std::move(e));
  }
  // repositories don't promise an order; normalize to canonical colex
  std::sort(f.edges.begin(), f.edges.end(), [](const Subset& a, const Subset& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  validate_system_file(f);
  return f;
}

SystemFile read_system_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SystemFileError("cannot open: " + path);
  char ch = 0;
  while (is.get(ch) && std::isspace(static_cast<unsigned char>(ch))) {
  }
  if (!is) throw SystemFileError("empty file: " + path);
  return ch == '{' ? read_system_file_json(path) : read_system_file_text(path);
}

RGraph graph_from_file(const SystemFile& f) {
  RGraph g(f.n, f.r);
  for (const auto& e : f.edges) g.insert(e);
  return g;
}

}  // namespace turan
