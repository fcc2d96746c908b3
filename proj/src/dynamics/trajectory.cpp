#include "qdeco/dynamics/trajectory.hpp"

#include <stdexcept>

#include "qdeco/io.hpp"
#include "qdeco/measures.hpp"

namespace qdeco {

const std::vector<double>& Trajectory::observable(const std::string& name) const {
  for (const auto& [key, series] : observables) {
    if (key == name) return series;
  }
  throw std::out_of_range("no observable named " + name);
}

std::vector<std::string> default_observables(const Dims& dims) {
  std::vector<std::string> names;
  if (dims == Dims{2, 2}) names.emplace_back("concurrence");
  if (dims.size() >= 2) names.emplace_back("negativity");
  names.emplace_back("coherence");
  names.emplace_back("purity");
  return names;
}

double evaluate_observable(const std::string& name, const DensityMatrix& rho) {
  if (name == "concurrence") return concurrence(rho);
  if (name == "negativity") return negativity(rho);
  if (name == "coherence") return l1_coherence(rho);
  if (name == "purity") return purity(rho);
  if (name == "entropy") return von_neumann_entropy(rho);
  if (name == "ppt") return is_ppt(rho) ? 1.0 : 0.0;
  throw std::invalid_argument("unknown observable " + name);
}

void write_csv(const Trajectory& trajectory, std::ostream& out) {
  out << 't';
  for (const auto& [name, series] : trajectory.observables) out << ',' << name;
  out << '\n';
  for (std::size_t row = 0; row < trajectory.times.size(); ++row) {
    out << format_number(trajectory.times[row]);
    for (const auto& [name, series] : trajectory.observables) out << ',' << format_number(series.at(row));
    out << '\n';
  }
}

}  // namespace qdeco
