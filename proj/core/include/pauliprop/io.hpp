#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pauliprop/circuit.hpp"
#include "pauliprop/observable.hpp"
#include "pauliprop/propagator.hpp"

namespace pauliprop::io {

/// {"n_qubits": int, "n_params": int, "gates": [{"type": "rx"|"ry"|"rz",
/// "qubit": int, "param": int} | {"type": "cnot", "control": int,
/// "target": int}]}. Parse errors name the offending field.
Circuit read_circuit_json(std::istream& in);
Circuit read_circuit_file(const std::string& path);
void write_circuit_json(std::ostream& out, const Circuit& circuit);

/// A letter string ("ZIII", qubit 0 first) or, if `spec` names an existing
/// file, lines of "<int coeff> <letters>" ('#' starts a comment).
IntegerObservable parse_observable(const std::string& spec);
IntegerObservable parse_observable_lines(std::istream& in);

/**
 * JSON Lines: a header object
 *   {"format": "pauliprop-observable", "n_qubits": n, "n_params": P,
 *    "meta": {"w_cut": int|null, "nu_cut": int|null, "discarded_by_weight": int,
 *             "discarded_by_frequency": int, "gate_count_processed": int}}
 * followed by one term per line in canonical order:
 *   {"pauli": "ZIII", "monomial": [[8, "cos", 1], ...], "coeff": 1}
 */
void write_observable_jsonl(std::ostream& out, const PropagatedObservable& po);
PropagatedObservable read_observable_jsonl(std::istream& in);
PropagatedObservable read_observable_file(const std::string& path);

/// Always 17 significant digits,
/// '.' decimal point, independent of the global locale.
std::string format_double(double v);

/// Rows of comma-separated angles. A first line that does not parse as
/// numbers is treated as a header.
std::vector<std::vector<double>> read_theta_csv(std::istream& in);
std::vector<std::vector<double>> read_theta_file(const std::string& path);

}  // namespace pauliprop::io
