#include "pauliprop/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pauliprop/errors.hpp"

namespace pauliprop::io {

using nlohmann::json;

namespace {

std::int64_t require_int(const json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field)) throw ValidationError(where + ": missing field \"" + field + "\"");
  const json& v = obj.at(field);
  if (!v.is_number_integer()) throw ValidationError(where + ": field \"" + field + "\" must be an integer");
  return v.get<std::int64_t>();
}

std::uint32_t require_index(const json& obj, const char* field, const std::string& where) {
  const std::int64_t v = require_int(obj, field, where);
  if (v < 0) throw ValidationError(where + ": field \"" + field + "\" must be non-negative");
  return static_cast<std::uint32_t>(v);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return in;
}

}  // namespace

Circuit read_circuit_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("circuit JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("circuit: top level must be an object");
  Circuit c;
  const std::int64_t n = require_int(doc, "n_qubits", "circuit");
  const std::int64_t p = require_int(doc, "n_params", "circuit");
  if (n <= 0) throw ValidationError("circuit: field \"n_qubits\" must be positive");
  if (p < 0) throw ValidationError("circuit: field \"n_params\" must be non-negative");
  c.n_qubits = static_cast<std::size_t>(n);
  c.n_params = static_cast<std::size_t>(p);
  if (!doc.contains("gates") || !doc["gates"].is_array()) {
    throw ValidationError("circuit: field \"gates\" must be an array");
  }
  const auto& gates = doc["gates"];
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const json& g = gates[i];
    const std::string where = "circuit: gates[" + std::to_string(i) + "]";
    if (!g.is_object() || !g.contains("type") || !g["type"].is_string()) {
      throw ValidationError(where + ": field \"type\" must be a string");
    }
    const std::string type = g["type"].get<std::string>();
    if (type == "cnot") {
      c.gates.push_back(Gate::cnot(require_index(g, "control", where), require_index(g, "target", where)));
    } else if (type == "rx" || type == "ry" || type == "rz") {
      const std::uint32_t q = require_index(g, "qubit", where);
      const std::uint32_t param = require_index(g, "param", where);
      c.gates.push_back(type == "rx" ? Gate::rx(q, param) : type == "ry" ? Gate::ry(q, param) : Gate::rz(q, param));
    } else {
      throw ValidationError(where + ": unknown gate type \"" + type + "\"");
    }
  }
  c.validate();
  return c;
}

Circuit read_circuit_file(const std::string& path) {
  auto in = open_input(path);
  return read_circuit_json(in);
}

void write_circuit_json(std::ostream& out, const Circuit& circuit) {
  json doc;
  doc["n_qubits"] = circuit.n_qubits;
  doc["n_params"] = circuit.n_params;
  json gates = json::array();
  for (const Gate& g : circuit.gates) {
    switch (g.type) {
      case GateType::CNOT:
        gates.push_back({{"type", "cnot"}, {"control", g.qubit}, {"target", g.target}});
        break;
      case GateType::RX: gates.push_back({{"type", "rx"}, {"qubit", g.qubit}, {"param", g.param}}); break;
      case GateType::RY: gates.push_back({{"type", "ry"}, {"qubit", g.qubit}, {"param", g.param}}); break;
      case GateType::RZ: gates.push_back({{"type", "rz"}, {"qubit", g.qubit}, {"param", g.param}}); break;
    }
  }
  doc["gates"] = std::move(gates);
  out << doc.dump(2) << '\n';
}

IntegerObservable parse_observable_lines(std::istream& in) {
  IntegerObservable obs;
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string coeff_text, letters;
    if (!(ls >> coeff_text)) continue;
    if (!(ls >> letters)) throw ValidationError("observable line " + std::to_string(lineno) + ": expected \"<coeff> <letters>\"");
    std::int64_t coeff = 0;
    const auto [ptr, ec] = std::from_chars(coeff_text.data(), coeff_text.data() + coeff_text.size(), coeff);
    if (ec != std::errc{} || ptr != coeff_text.data() + coeff_text.size()) {
      throw ValidationError("observable line " + std::to_string(lineno) + ": coefficient must be an integer");
    }
    PauliWord w = PauliWord::from_string(letters);
    if (n == 0) n = w.n_qubits();
    if (w.n_qubits() != n) throw ValidationError("observable line " + std::to_string(lineno) + ": qubit count differs");
    obs.push_back({coeff, w});
  }
  if (obs.empty()) throw ValidationError("observable file has no terms");
  return obs;
}

IntegerObservable parse_observable(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) {
    auto in = open_input(spec);
    return parse_observable_lines(in);
  }
  if (spec.empty()) throw ValidationError("empty observable");
  return {PauliTerm{1, PauliWord::from_string(spec)}};
}

namespace {

json cutoff_json(const Cutoff& c) { return c ? json(*c) : json(nullptr); }

Cutoff cutoff_from_json(const json& v, const char* field) {
  if (v.is_null()) return std::nullopt;
  if (!v.is_number_unsigned() && !v.is_number_integer()) {
    throw ValidationError(std::string("observable header: meta.") + field + " must be int or null");
  }
  return v.get<std::uint32_t>();
}

}  // namespace

void write_observable_jsonl(std::ostream& out, const PropagatedObservable& po) {
  const auto& m = po.meta();
  json header = {{"format", "pauliprop-observable"},
                 {"n_qubits", po.n_qubits()},
                 {"n_params", po.n_params()},
                 {"meta",
                  {{"w_cut", cutoff_json(m.w_cut)},
                   {"nu_cut", cutoff_json(m.nu_cut)},
                   {"discarded_by_weight", m.discarded_by_weight},
                   {"discarded_by_frequency", m.discarded_by_frequency},
                   {"gate_count_processed", m.gate_count_processed}}}};
  out << header.dump() << '\n';
  for (const auto& t : po.sorted_terms()) {
    json mono = json::array();
    for (const auto& f : t.monomial.factors()) {
      mono.push_back(json::array({f.param, f.kind == Trig::Sin ? "sin" : "cos", f.exponent}));
    }
    out << json{{"pauli", t.word.to_string()}, {"monomial", std::move(mono)}, {"coeff", t.coeff}}.dump()
        << '\n';
  }
}

PropagatedObservable read_observable_jsonl(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto parse_line = [&](const std::string& text) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw ValidationError("observable line " + std::to_string(lineno) + ": " + e.what());
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty()) break;
  }
  if (line.empty()) throw ValidationError("observable JSONL is empty");
  const json header = parse_line(line);
  if (!header.is_object()) throw ValidationError("observable header must be an object");
  const auto n = static_cast<std::size_t>(require_int(header, "n_qubits", "observable header"));
  const std::size_t n_params =
      header.contains("n_params") ? static_cast<std::size_t>(require_int(header, "n_params", "observable header")) : 0;
  PropagatedObservable po(n, n_params);
  if (header.contains("meta")) {
    const json& m = header["meta"];
    if (m.contains("w_cut")) po.meta().w_cut = cutoff_from_json(m["w_cut"], "w_cut");
    if (m.contains("nu_cut")) po.meta().nu_cut = cutoff_from_json(m["nu_cut"], "nu_cut");
    po.meta().discarded_by_weight = m.value("discarded_by_weight", std::uint64_t{0});
    po.meta().discarded_by_frequency = m.value("discarded_by_frequency", std::uint64_t{0});
    po.meta().gate_count_processed = m.value("gate_count_processed", std::uint64_t{0});
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const json t = parse_line(line);
    const std::string where = "observable line " + std::to_string(lineno);
    if (!t.is_object() || !t.contains("pauli") || !t["pauli"].is_string()) {
      throw ValidationError(where + ": field \"pauli\" must be a string");
    }
    if (!t.contains("monomial") || !t["monomial"].is_array()) {
      throw ValidationError(where + ": field \"monomial\" must be an array");
    }
    const PauliWord word = PauliWord::from_string(t["pauli"].get<std::string>());
    std::vector<TrigFactor> factors;
    for (const json& f : t["monomial"]) {
      if (!f.is_array() || f.size() != 3 || !f[0].is_number_integer() || !f[1].is_string() ||
          !f[2].is_number_integer() || f[0].get<std::int64_t>() < 0 || f[2].get<std::int64_t>() < 1) {
        throw ValidationError(where + ": monomial factors must be [param_id, \"sin\"|\"cos\", exponent>=1]");
      }
      const std::string kind = f[1].get<std::string>();
      if (kind != "sin" && kind != "cos") throw ValidationError(where + ": factor kind must be \"sin\" or \"cos\"");
      factors.push_back({f[0].get<std::uint32_t>(), kind == "sin" ? Trig::Sin : Trig::Cos,
                         f[2].get<std::uint32_t>()});
    }
    po.merge_into(SymbolicTerm{word, TrigMonomial::from_factors(factors), require_int(t, "coeff", where)});
  }
  return po;
}

PropagatedObservable read_observable_file(const std::string& path) {
  auto in = open_input(path);
  return read_observable_jsonl(in);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::vector<std::vector<double>> read_theta_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    bool numeric = true;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      std::string_view cell(line.data() + start, end - start);
      while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
      while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty()) {
        numeric = false;
        break;
      }
      row.push_back(v);
      start = end + 1;
    }
    if (!numeric) {
      if (rows.empty() && lineno == 1) continue;  // header
      throw ValidationError("theta CSV line " + std::to_string(lineno) + ": non-numeric entry");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ValidationError("theta CSV line " + std::to_string(lineno) + ": row length differs");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<double>> read_theta_file(const std::string& path) {
  auto in = open_input(path);
  return read_theta_csv(in);
}

}  // namespace pauliprop::io
