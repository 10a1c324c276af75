#include "levelset/adversary.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "levelset/errors.hpp"

namespace levelset {

namespace {

bool bitwise_equal(const Point& a, const Point& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (std::bit_cast<std::uint64_t>(a[j]) != std::bit_cast<std::uint64_t>(b[j]))
      return false;
  }
  return true;
}

bool in_open_ball(const Point& x, const Point& z, double eta) {
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (!(std::abs(x[j] - z[j]) < eta)) return false;
  }
  return true;
}

}  // namespace

double bump_scale_holder(double eps, int d, double c, double gamma) {
  if (!(eps > 0.0) || d < 1 || !(c > 0.0) || !(gamma > 0.0) || gamma > 1.0)
    throw std::invalid_argument("bad bump scale arguments");
  if (!(eps < c / (3.0 * d * std::pow(2.0, gamma))))
    throw AccuracyTooLarge("eps must be below c / (3 d 2^gamma)");
  const double eta =
      std::pow(6.0 * eps * d * std::pow(2.0, 1.0 - gamma) / c, 1.0 / gamma);
  if (eta > 0.25 + 1e-12)
    throw AccuracyTooLarge("eps yields a bump half-width above 1/4");
  return eta;
}

double bump_scale_gradholder(double eps, int d, double c1, double gamma1) {
  if (!(eps > 0.0) || d < 1 || !(c1 > 0.0) || !(gamma1 > 0.0) || gamma1 > 1.0)
    throw std::invalid_argument("bad bump scale arguments");
  if (!(eps < c1 / (132.0 * d * std::pow(2.0, 3.0 + gamma1))))
    throw AccuracyTooLarge("eps must be below c1 / (132 d 2^(3+gamma1))");
  const double eta = std::pow(
      132.0 * eps * d * std::pow(2.0, 1.0 - gamma1) / c1, 1.0 / (1.0 + gamma1));
  if (eta > 0.25 + 1e-12)
    throw AccuracyTooLarge("eps yields a bump half-width above 1/4");
  return eta;
}

Oracle adversary_bump(const AdversaryInstance& instance, double eta,
                      const Point& z) {
  return make_bump_function(2.0 * instance.eps, eta, z, instance.target);
}

std::string AdversaryReport::to_text() const {
  std::ostringstream os;
  os << "budget: " << budget << "\n";
  os << "eta: " << eta << "\n";
  os << "grid_size: " << grid_size << "\n";
  if (verdict == Verdict::BudgetSufficient) {
    os << "verdict: BudgetSufficient\n";
    return os.str();
  }
  os << "verdict: AlgorithmDefeated\n";
  os << "witness:";
  for (double v : *witness) os << ' ' << v;
  os << "\n";
  if (branch == Branch::ExcessAtWitness) {
    os << "branch: excess (witness belongs to the output set but the bump "
          "value there is "
       << witness_value << " > eps)\n";
  } else {
    os << "branch: containment (witness is on the level set of f == 0 but "
          "not in the output set)\n";
  }
  return os.str();
}

AdversaryReport run_indistinguishability(const AlgorithmFactory& factory,
                                         long long budget,
                                         const AdversaryInstance& instance) {
  if (budget < 0) throw std::invalid_argument("budget must be >= 0");
  double eta = 0.0;
  switch (instance.target.cls) {
    case SmoothnessTag::Class::Holder:
      eta = bump_scale_holder(instance.eps, instance.dim, instance.target.c,
                              instance.target.exponent);
      break;
    case SmoothnessTag::Class::GradHolder:
      eta = bump_scale_gradholder(instance.eps, instance.dim,
                                  instance.target.c, instance.target.exponent);
      break;
    case SmoothnessTag::Class::Unknown:
      throw UnknownSmoothness("adversary needs a target smoothness class");
  }

  AdversaryReport report;
  report.budget = budget;
  report.eta = eta;
  report.grid_size = bump_grid_size(eta, instance.dim);
  if (budget >= report.grid_size) {
    report.verdict = AdversaryReport::Verdict::BudgetSufficient;
    return report;
  }

  // Pass 1: the algorithm explores f == 0 and observes only zeros.
  std::vector<Point> transcript;
  transcript.reserve(static_cast<std::size_t>(budget));
  auto first = factory();
  for (long long n = 0; n < budget; ++n) {
    transcript.push_back(first->next_query());
    first->observe(0.0);
  }

  // Pigeonhole: some grid cell received no query.
  std::optional<Point> witness;
  for (const Point& z : bump_grid(eta, instance.dim)) {
    bool touched = false;
    for (const Point& x : transcript) {
      if (in_open_ball(x, z, eta)) {
        touched = true;
        break;
      }
    }
    if (!touched) {
      witness = z;
      break;
    }
  }
  if (!witness)
    throw NoUnqueriedCell("budget below |Z| left no untouched cell");

  // Pass 2: replay against the bump centered at the witness. The transcript
  // must be bitwise identical with all-zero observations, hence the same
  // output set.
  const Oracle bump = adversary_bump(instance, eta, *witness);
  auto second = factory();
  for (long long n = 0; n < budget; ++n) {
    const Point x = second->next_query();
    if (!bitwise_equal(x, transcript[static_cast<std::size_t>(n)]))
      throw NondeterministicAlgorithm("replayed query " + std::to_string(n) +
                                      " diverged");
    if (in_open_ball(x, *witness, eta))
      throw NoUnqueriedCell("replay query entered the witness ball");
    const double value = bump.eval(x);
    if (value != 0.0)
      throw NoUnqueriedCell("bump observed non-zero outside its support");
    second->observe(value);
  }

  const bool in_first = first->output_contains(*witness);
  const bool in_second = second->output_contains(*witness);
  if (in_first != in_second)
    throw NondeterministicAlgorithm("output sets disagree at the witness");

  report.verdict = AdversaryReport::Verdict::AlgorithmDefeated;
  report.witness = *witness;
  if (in_second) {
    report.branch = AdversaryReport::Branch::ExcessAtWitness;
    report.witness_value = bump.eval(*witness);  // 2 eps > eps
  } else {
    report.branch = AdversaryReport::Branch::ContainmentAtWitness;
    report.witness_value = 0.0;  // f == 0 attains the level at the witness
  }
  return report;
}

}  // namespace levelset
