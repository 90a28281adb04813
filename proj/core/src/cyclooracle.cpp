#include "permlike/cyclooracle.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "permlike/certificate.hpp"

namespace permlike {

namespace {

// Exact division by a monic integer polynomial; throws if there is a remainder.
IntPoly divide_exact(IntPoly num, const IntPoly& den) {
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) throw Error("cyclotomic division underflow");
  IntPoly q(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const mpz_class c = num[i];
    if (c == 0) continue;
    q[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (const auto& c : num) {
    if (c != 0) throw Error("cyclotomic division left a remainder");
  }
  return q;
}

using QPoly = std::vector<mpq_class>;

void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// f = q * g + r over Q.
void divmod(QPoly f, const QPoly& g, QPoly& q, QPoly& r) {
  trim(f);
  q.assign(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, 0);
  const mpq_class lead = g.back();
  while (f.size() >= g.size() && !f.empty()) {
    const std::size_t shift = f.size() - g.size();
    const mpq_class c = f.back() / lead;
    q[shift] = c;
    for (std::size_t j = 0; j < g.size(); ++j) f[shift + j] -= c * g[j];
    trim(f);
  }
  r = std::move(f);
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

std::string rational_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

IntPoly cyclotomic_polynomial(i64 m) {
  if (m < 1) throw Error("cyclotomic index must be positive");
  static std::mutex mu;
  static std::map<i64, IntPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  IntPoly f(static_cast<std::size_t>(m) + 1, 0);
  f[0] = -1;
  f[static_cast<std::size_t>(m)] = 1;
  for (i64 k : divisors(m)) {
    if (k != m) f = divide_exact(std::move(f), cyclotomic_polynomial(k));
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(m, f);
  return f;
}

IntPoly multiply(const IntPoly& x, const IntPoly& y) {
  if (x.empty() || y.empty()) return {};
  IntPoly out(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return out;
}

std::string to_string(const IntPoly& f) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    mpz_class c = f[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (c < 0) c = -c;
    if (c != 1 || i == 0) os << c.get_str();
    if (i > 0) os << "x";
    if (i > 1) os << "^" << i;
    first = false;
  }
  return first ? "0" : os.str();
}

std::shared_ptr<const CycloField> CycloField::get(i64 conductor, i64 cap) {
  if (conductor < 1) throw Error("conductor must be positive");
  if (conductor > cap) throw Error("conductor " + std::to_string(conductor) + " exceeds cap");
  static std::mutex mu;
  static std::map<i64, std::shared_ptr<const CycloField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[conductor];
  if (!slot) slot = std::make_shared<const CycloField>(conductor);
  return slot;
}

CycloField::CycloField(i64 conductor) : conductor_(conductor), phi_(cyclotomic_polynomial(conductor)) {
  const std::size_t deg = degree();
  roots_.reserve(static_cast<std::size_t>(conductor));
  std::vector<mpq_class> current(deg, 0);
  current[0] = 1;
  if (deg == 1) current[0] = 1;
  reduce(current);
  for (i64 e = 0; e < conductor; ++e) {
    roots_.push_back(current);
    // multiply by x, then reduce
    std::vector<mpq_class> next(deg + 1, 0);
    for (std::size_t i = 0; i < deg; ++i) next[i + 1] = current[i];
    reduce(next);
    current = std::move(next);
  }
}

const std::vector<mpq_class>& CycloField::root(i64 e) const {
  return roots_[static_cast<std::size_t>(mod(e, conductor_))];
}

void CycloField::reduce(std::vector<mpq_class>& coeffs) const {
  const std::size_t deg = degree();
  for (std::size_t i = coeffs.size(); i-- > deg;) {
    if (coeffs[i] == 0) continue;
    const mpq_class c = coeffs[i];
    for (std::size_t j = 0; j < deg; ++j) {
      if (phi_[j] != 0) coeffs[i - deg + j] -= c * phi_[j];
    }
    coeffs[i] = 0;
  }
  coeffs.resize(deg, 0);
}

CycloNum::CycloNum(FieldPtr field) : field_(std::move(field)), coeffs_(field_->degree(), 0) {}

CycloNum::CycloNum(FieldPtr field, std::vector<mpq_class> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  field_->reduce(coeffs_);
}

CycloNum::CycloNum(FieldPtr field, const mpq_class& scalar) : CycloNum(std::move(field)) {
  coeffs_[0] = scalar;
  coeffs_[0].canonicalize();
}

CycloNum CycloNum::root(FieldPtr field, i64 e) {
  CycloNum out(field);
  out.coeffs_ = field->root(e);
  return out;
}

bool CycloNum::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

std::optional<mpq_class> CycloNum::as_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return std::nullopt;
  }
  return coeffs_.empty() ? mpq_class(0) : coeffs_[0];
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  if (field_ != o.field_) throw Error("field mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  if (field_ != o.field_) throw Error("field mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  if (a.field_ != b.field_) throw Error("field mismatch");
  const std::size_t deg = a.coeffs_.size();
  std::vector<mpq_class> out(deg == 0 ? 0 : 2 * deg - 1, 0);
  for (std::size_t i = 0; i < deg; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < deg; ++j) {
      if (b.coeffs_[j] != 0) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return CycloNum(a.field_, std::move(out));
}

CycloNum CycloNum::operator-() const {
  CycloNum out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

CycloNum CycloNum::scaled(const mpq_class& q) const {
  CycloNum out = *this;
  for (auto& c : out.coeffs_) c *= q;
  return out;
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw Error("inverse of zero");
  // Extended Euclid on (Phi_M, a): keeps r_i = s_i * a mod Phi_M.
  QPoly r0(field_->phi().begin(), field_->phi().end());
  QPoly r1 = coeffs_;
  trim(r1);
  QPoly s0, s1{1};
  while (r1.size() > 1) {
    QPoly q, rem;
    divmod(r0, r1, q, rem);
    QPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  const mpq_class c = r1.at(0);
  for (auto& x : s1) x /= c;
  return CycloNum(field_, std::move(s1));
}

bool CycloNum::operator==(const CycloNum& o) const {
  return field_->conductor() == o.field_->conductor() && coeffs_ == o.coeffs_;
}

std::string CycloNum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    os << coeffs_[i].get_str();
    if (i > 0) os << "*z" << field_->conductor() << "^" << i;
    first = false;
  }
  return first ? "0" : os.str();
}

CycloPoly multiply(const CycloPoly& x, const CycloPoly& y) {
  if (x.empty() || y.empty()) return {};
  const FieldPtr& field = x.front().field();
  CycloPoly out(x.size() + y.size() - 1, CycloNum(field));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!y[j].is_zero()) out[i + j] += x[i] * y[j];
    }
  }
  return out;
}

bool equal(const CycloPoly& x, const CycloPoly& y) {
  const std::size_t n = std::max(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    const bool xz = i >= x.size() || x[i].is_zero();
    const bool yz = i >= y.size() || y[i].is_zero();
    if (xz && yz) continue;
    if (xz != yz || !(x[i] == y[i])) return false;
  }
  return true;
}

CycloPoly embed(const IntPoly& f, const FieldPtr& field) {
  CycloPoly out;
  out.reserve(f.size());
  for (const auto& c : f) out.emplace_back(field, mpq_class(c));
  return out;
}

std::vector<std::vector<std::string>> serialize(const CycloPoly& f) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : f) {
    std::vector<std::string> row;
    for (const auto& q : c.coeffs()) row.push_back(rational_string(q));
    out.push_back(std::move(row));
  }
  return out;
}

DenseMatrix::DenseMatrix(std::size_t d, FieldPtr field)
    : d_(d), field_(std::move(field)), entries_(d * d, CycloNum(field_)) {}

DenseMatrix DenseMatrix::identity(std::size_t d, FieldPtr field) {
  DenseMatrix out(d, field);
  for (std::size_t i = 0; i < d; ++i) out.at(i, i) = CycloNum(field, mpq_class(1));
  return out;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.d_ != b.d_) throw Error("dimension mismatch");
  const std::size_t d = a.d_;
  DenseMatrix out(d, a.field_);
  std::vector<std::vector<std::size_t>> nonzero(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t t = 0; t < d; ++t) {
      if (!a.at(i, t).is_zero()) nonzero[i].push_back(t);
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      CycloNum acc(a.field_);
      for (std::size_t t : nonzero[i]) {
        if (!b.at(t, j).is_zero()) acc += a.at(i, t) * b.at(t, j);
      }
      out.at(i, j) = std::move(acc);
    }
  }
  return out;
}

CycloNum DenseMatrix::trace() const {
  CycloNum acc(field_);
  for (std::size_t i = 0; i < d_; ++i) acc += at(i, i);
  return acc;
}

DenseMatrix realize(const MonoMatrix& x, const FieldPtr& field) {
  if (field->conductor() % x.modulus() != 0) throw Error("field conductor must be a multiple of the phase modulus");
  const i64 scale = field->conductor() / x.modulus();
  const auto d = static_cast<std::size_t>(x.dim());
  DenseMatrix out(d, field);
  for (std::size_t j = 0; j < d; ++j) {
    out.at(static_cast<std::size_t>(x.sigma()[j]), j) = CycloNum::root(field, x.phase()[j] * scale);
  }
  return out;
}

CycloPoly char_poly_dense(const DenseMatrix& dense) {
  const std::size_t n = dense.dim();
  const FieldPtr& field = dense.field();
  CycloPoly c(n + 1, CycloNum(field));
  c[n] = CycloNum(field, mpq_class(1));
  DenseMatrix product(n, field);  // A * M_(k-1), zero to start
  for (std::size_t k = 1; k <= n; ++k) {
    DenseMatrix mk = product;
    for (std::size_t i = 0; i < n; ++i) mk.at(i, i) += c[n - k + 1];
    product = dense * mk;
    c[n - k] = product.trace().scaled(mpq_class(-1, static_cast<long>(k)));
  }
  return c;
}

CycloPoly expand_factors(const CycleFactors& f, const FieldPtr& field) {
  CycloPoly out{CycloNum(field, mpq_class(1))};
  for (const auto& factor : f.factors) {
    const RootExp w = factor.omega.lifted(lcm(factor.omega.modulus, field->conductor()));
    if (w.modulus != field->conductor()) throw Error("factor root does not lie in the field");
    CycloPoly term(static_cast<std::size_t>(factor.length) + 1, CycloNum(field));
    term[0] = -CycloNum::root(field, w.exp);
    term.back() = CycloNum(field, mpq_class(1));
    out = multiply(out, term);
  }
  return out;
}

CycloNum trace(const MonoMatrix& x, const FieldPtr& field) {
  if (field->conductor() % x.modulus() != 0) throw Error("field conductor must be a multiple of the phase modulus");
  CycloNum acc(field);
  for (const RootExp& w : fixed_point_phases(x)) acc += CycloNum::root(field, w.lifted(field->conductor()).exp);
  return acc;
}

CycloNum determinant(DenseMatrix m) {
  const std::size_t d = m.dim();
  const FieldPtr field = m.field();
  CycloNum det(field, mpq_class(1));
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && m.at(pivot, col).is_zero()) ++pivot;
    if (pivot == d) return CycloNum(field);
    if (pivot != col) {
      for (std::size_t j = 0; j < d; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      det = -det;
    }
    det = det * m.at(col, col);
    const CycloNum inv = m.at(col, col).inverse();
    for (std::size_t i = col + 1; i < d; ++i) {
      if (m.at(i, col).is_zero()) continue;
      const CycloNum factor = m.at(i, col) * inv;
      for (std::size_t j = col; j < d; ++j) {
        if (!m.at(col, j).is_zero()) m.at(i, j) -= factor * m.at(col, j);
      }
    }
  }
  return det;
}

namespace {

struct PrimeEmbedding {
  i64 q = 0;
  i64 zeta = 0;  // element of order exactly M in F_q
};

PrimeEmbedding embedding_for(i64 m) {
  // Smallest prime q = 1 mod m above 2^30.
  i64 q = ((i64{1} << 30) / m + 1) * m + 1;
  while (!is_prime(q)) q += m;
  const auto factors = prime_factors(m);
  for (i64 x = 2;; ++x) {
    const i64 g = pow_mod(x, (q - 1) / m, q);
    bool exact = true;
    for (i64 f : factors) {
      if (pow_mod(g, m / f, q) == 1) exact = false;
    }
    if (exact && (m == 1 || g != 1)) return {q, g};
    if (m == 1) return {q, 1};
  }
}

}  // namespace

std::optional<bool> determinant_nonzero_mod_prime(const DenseMatrix& dense) {
  const std::size_t d = dense.dim();
  const i64 m = dense.field()->conductor();
  const PrimeEmbedding emb = embedding_for(m);
  const i64 q = emb.q;
  std::vector<i64> powers(dense.field()->degree(), 1);
  for (std::size_t i = 1; i < powers.size(); ++i) powers[i] = mul_mod(powers[i - 1], emb.zeta, q);

  std::vector<i64> a(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto& coeffs = dense.at(i, j).coeffs();
      i64 acc = 0;
      for (std::size_t t = 0; t < coeffs.size(); ++t) {
        if (coeffs[t] == 0) continue;
        const mpz_class num = coeffs[t].get_num() % q;
        const mpz_class den = coeffs[t].get_den() % q;
        if (den == 0) return std::nullopt;
        const i64 value = mul_mod(num.get_si(), inverse_mod(den.get_si(), q), q);
        acc = (acc + mul_mod(value, powers[t], q)) % q;
      }
      a[i * d + j] = acc;
    }
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && a[pivot * d + col] == 0) ++pivot;
    if (pivot == d) return std::nullopt;
    if (pivot != col) {
      for (std::size_t j = 0; j < d; ++j) std::swap(a[pivot * d + j], a[col * d + j]);
    }
    const i64 inv = inverse_mod(a[col * d + col], q);
    for (std::size_t i = col + 1; i < d; ++i) {
      if (a[i * d + col] == 0) continue;
      const i64 factor = mul_mod(a[i * d + col], inv, q);
      for (std::size_t j = col; j < d; ++j) {
        a[i * d + j] = mod(a[i * d + j] - mul_mod(factor, a[col * d + j], q), q);
      }
    }
  }
  return true;
}

VerificationResult verify_certificate(const Certificate& cert, const VerifyOptions& opts) {
  VerificationResult res;
  const GroupSpec& g = cert.group;
  const i64 d = g.d();
  const auto du = static_cast<std::size_t>(d);
  const i64 m = lcm(g.modulus(), cert.f_modulus);
  const FieldPtr field = CycloField::get(m, opts.conductor_cap);

  if (cert.f_coords.size() != du || cert.image_A.size() != du || cert.image_C.size() != du) {
    res.reason = "certificate is structurally incomplete";
    return res;
  }
  for (const auto* image : {&cert.image_A, &cert.image_C}) {
    std::vector<bool> hit(du, false);
    for (i64 v : *image) {
      if (v < 0 || v >= d || hit[static_cast<std::size_t>(v)]) {
        res.reason = "claimed image is not a permutation";
        return res;
      }
      hit[static_cast<std::size_t>(v)] = true;
    }
  }

  // P[j][k] = f_j * lambda^(j k), the eigen-coordinates of C^k f.
  const i64 f_scale = m / cert.f_modulus;
  const i64 lambda = m / d;
  DenseMatrix p(du, field);
  for (i64 j = 0; j < d; ++j) {
    for (i64 k = 0; k < d; ++k) {
      const i64 e = cert.f_coords[static_cast<std::size_t>(j)] * f_scale + mul_mod(j * k, lambda, m);
      p.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) = CycloNum::root(field, e);
    }
  }

  struct Generator {
    const char* name;
    const MonoMatrix* matrix;
    const std::vector<i64>* image;
  };
  for (const Generator& gen : {Generator{"A", &g.A(), &cert.image_A}, Generator{"C", &g.C(), &cert.image_C}}) {
    const DenseMatrix lhs = realize(*gen.matrix, field) * p;
    for (std::size_t k = 0; k < du; ++k) {
      const auto target = static_cast<std::size_t>((*gen.image)[k]);
      for (std::size_t j = 0; j < du; ++j) {
        if (!(lhs.at(j, k) == p.at(j, target))) {
          res.generator = gen.name;
          res.row = static_cast<i64>(j);
          res.col = static_cast<i64>(k);
          res.reason = std::string("g P != P Pi(g) for generator ") + gen.name;
          return res;
        }
      }
    }
  }

  std::optional<bool> fast;
  if (!opts.exact_determinant) fast = determinant_nonzero_mod_prime(p);
  if (fast.has_value()) {
    res.det_nonzero = *fast;
    res.det_method = "mod-prime";
  } else {
    res.det_nonzero = !determinant(p).is_zero();
    res.det_method = "exact";
  }
  if (!res.det_nonzero) {
    res.reason = "columns C^k f are linearly dependent";
    return res;
  }
  res.ok = true;
  return res;
}

}  // namespace permlike
