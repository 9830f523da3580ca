#include "mhrev/models.hpp"

#include <cmath>
#include <string>

namespace mhrev {

StochasticKernel asymmetric_cycle(int n, double p) {
  if (n < 3 || !(p > 0.0 && p < 1.0)) {
    throw BadParams("asymmetric_cycle: need n >= 3 and 0 < p < 1");
  }
  Matrix P = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    P(j, (j + 1) % n) = p;
    P(j, (j - 1 + n) % n) = 1.0 - p;
  }
  return StochasticKernel(std::move(P));
}

namespace {

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return K;
}

}  // namespace

StochasticKernel torus_walk(int n, int d, double p, int size_cap) {
  if (d < 1) throw BadParams("torus_walk: need d >= 1");
  const double states = std::pow(static_cast<double>(n), d);
  if (states > size_cap) {
    throw TooLarge("torus_walk: n^d exceeds the size cap");
  }
  const Matrix P = asymmetric_cycle(n, p).matrix();
  const int total = static_cast<int>(states);
  Matrix sum = Matrix::Zero(total, total);
  for (int i = 0; i < d; ++i) {
    Matrix term = Matrix::Identity(1, 1);
    for (int j = 0; j < d; ++j) {
      term = kron(term, j == i ? P : Matrix::Identity(n, n));
    }
    sum += term;
  }
  return StochasticKernel(sum / d);
}

StochasticKernel triangle() {
  Matrix P(3, 3);
  P << 0.0, 1.0, 0.0,
       0.0, 0.0, 1.0,
       0.5, 0.5, 0.0;
  return StochasticKernel(std::move(P));
}

StochasticKernel dhn_sampler(int m) {
  if (m < 2) throw BadParams("dhn_sampler: need m >= 2");
  const int n = 2 * m;
  // Labels -(m-1)..m map to indices 0..2m-1 in increasing order.
  const auto index_of = [m, n](int label) {
    int l = label % n;
    if (l > m) l -= n;
    if (l < -(m - 1)) l += n;
    return l + m - 1;
  };
  Matrix P = Matrix::Zero(n, n);
  for (int label = -(m - 1); label <= m; ++label) {
    const int i = index_of(label);
    P(i, index_of(label + 1)) += 1.0 - 1.0 / m;
    P(i, index_of(-label)) += 1.0 / m;
  }
  return StochasticKernel(std::move(P));
}

std::vector<std::string> dhn_labels(int m) {
  std::vector<std::string> labels;
  for (int label = -(m - 1); label <= m; ++label) labels.push_back(std::to_string(label));
  return labels;
}

StochasticKernel winning_streak(int m) {
  if (m < 2) throw BadParams("winning_streak: need m >= 2");
  Matrix P = Matrix::Zero(m + 1, m + 1);
  for (int i = 0; i < m; ++i) {
    P(i, 0) += 0.5;
    P(i, i + 1) += 0.5;
  }
  P(m, 0) += 0.5;
  P(m, m) += 0.5;
  return StochasticKernel(std::move(P));
}

StochasticKernel upward_skip_free() {
  Matrix P(4, 4);
  P << 0.5, 0.5, 0.0, 0.0,
       0.2, 0.6, 0.2, 0.0,
       0.1, 0.3, 0.5, 0.1,
       0.1, 0.2, 0.4, 0.3;
  return StochasticKernel(std::move(P));
}

BirthDeathSpec BirthDeathSpec::ehrenfest(int n, double p) {
  BirthDeathSpec s;
  s.kind = Kind::Ehrenfest;
  s.n = n;
  s.p = p;
  return s;
}

BirthDeathSpec BirthDeathSpec::mm1(double lambda, double mu, int truncation) {
  BirthDeathSpec s;
  s.kind = Kind::MM1;
  s.lambda = lambda;
  s.mu = mu;
  s.truncation = truncation;
  return s;
}

BirthDeathSpec BirthDeathSpec::mm_infinity(double lambda, int truncation) {
  BirthDeathSpec s;
  s.kind = Kind::MMInfinity;
  s.lambda = lambda;
  s.truncation = truncation;
  return s;
}

BirthDeathSpec BirthDeathSpec::gwi(double lambda, double r, int truncation) {
  BirthDeathSpec s;
  s.kind = Kind::GWI;
  s.lambda = lambda;
  s.r = r;
  s.truncation = truncation;
  return s;
}

BirthDeath birth_death_generator(const BirthDeathSpec& spec) {
  using Kind = BirthDeathSpec::Kind;
  int top = 0;
  switch (spec.kind) {
    case Kind::Ehrenfest:
      if (spec.n < 1 || !(spec.p > 0.0 && spec.p < 1.0)) {
        throw BadParams("birth_death_generator: Ehrenfest needs n >= 1, 0 < p < 1");
      }
      top = spec.n;
      break;
    case Kind::MM1:
      if (!(spec.mu > spec.lambda) || spec.lambda <= 0.0) {
        throw BadParams("birth_death_generator: MM1 needs mu > lambda > 0");
      }
      top = spec.truncation;
      break;
    case Kind::MMInfinity:
      if (spec.lambda <= 0.0) throw BadParams("birth_death_generator: MMInf needs lambda > 0");
      top = spec.truncation;
      break;
    case Kind::GWI:
      if (!(spec.lambda > 0.0 && spec.lambda < 1.0) || spec.r <= 0.0) {
        throw BadParams("birth_death_generator: GWI needs 0 < lambda < 1 and r > 0");
      }
      top = spec.truncation;
      break;
  }
  if (top < 1) throw BadParams("birth_death_generator: window must hold at least 2 states");

  const auto birth = [&spec](int i) -> double {
    switch (spec.kind) {
      case Kind::Ehrenfest: return spec.p * (spec.n - i);
      case Kind::MM1: return spec.lambda;
      case Kind::MMInfinity: return spec.lambda;
      case Kind::GWI: return spec.lambda * (spec.r + i);
    }
    return 0.0;
  };
  const auto death = [&spec](int i) -> double {
    switch (spec.kind) {
      case Kind::Ehrenfest: return (1.0 - spec.p) * i;
      case Kind::MM1: return spec.mu;
      case Kind::MMInfinity: return static_cast<double>(i);
      case Kind::GWI: return static_cast<double>(i);
    }
    return 0.0;
  };

  const int size = top + 1;
  Matrix G = Matrix::Zero(size, size);
  for (int i = 0; i <= top; ++i) {
    if (i < top) G(i, i + 1) = birth(i);
    if (i > 0) G(i, i - 1) = death(i);
    G(i, i) = -G.row(i).sum();
  }

  // Weights from the detailed-balance recurrence w(i+1) = w(i) b(i)/d(i+1);
  // exact reversibility of the truncated chain comes for free.
  Vector w(size);
  w[0] = 1.0;
  for (int i = 0; i < top; ++i) w[i + 1] = w[i] * birth(i) / death(i + 1);
  const double total = w.sum();
  w /= total;

  double tail = 0.0;
  switch (spec.kind) {
    case Kind::Ehrenfest:
      tail = 0.0;
      break;
    case Kind::MM1: {
      const double rho = spec.lambda / spec.mu;
      tail = std::pow(rho, top + 1);
      break;
    }
    case Kind::MMInfinity: {
      double term = std::exp(-spec.lambda);
      double cdf = term;
      for (int i = 1; i <= top; ++i) {
        term *= spec.lambda / i;
        cdf += term;
      }
      tail = std::max(0.0, 1.0 - cdf);
      break;
    }
    case Kind::GWI: {
      double term = std::pow(1.0 - spec.lambda, spec.r);
      double cdf = term;
      for (int i = 1; i <= top; ++i) {
        term *= spec.lambda * (spec.r + i - 1) / i;
        cdf += term;
      }
      tail = std::max(0.0, 1.0 - cdf);
      break;
    }
  }

  return {RateGenerator(std::move(G)), ProbabilityVector(std::move(w), 1e-9), tail};
}

RateGenerator cyclic_vortex(int n, const ProbabilityVector& pi) {
  if (n < 2 || n > pi.size()) {
    throw BadParams("cyclic_vortex: need 2 <= n <= state count");
  }
  Matrix V = Matrix::Zero(pi.size(), pi.size());
  for (int i = 0; i < n; ++i) {
    V(i, (i + 1) % n) += 1.0 / pi[i];
    V(i, i) -= 1.0 / pi[i];
  }
  return RateGenerator(std::move(V));
}

}  // namespace mhrev
