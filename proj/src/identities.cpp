#include "thmm/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <utility>

#include "thmm/blockkit.hpp"
#include "thmm/expansions.hpp"
#include "thmm/numerics.hpp"
#include "thmm/omp.hpp"
#include "thmm/resolvent.hpp"

namespace thmm {

std::string to_string(Tier t) {
  switch (t) {
    case Tier::Structural: return "structural";
    case Tier::Moment: return "moment";
    case Tier::OneInverse: return "one-inverse";
    case Tier::Nested: return "nested";
  }
  return "?";
}

std::string to_string(Applicability a) {
  switch (a) {
    case Applicability::Both: return "both";
    case Applicability::Even: return "even";
    case Applicability::Odd: return "odd";
  }
  return "?";
}

std::string to_string(Requirement r) {
  switch (r) {
    case Requirement::None: return "none";
    case Requirement::HtildeInvertible: return "Htilde";
    case Requirement::GammaInvertible: return "Gamma";
  }
  return "?";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::NotApplicable: return "not-applicable";
  }
  return "?";
}

TolProfile TolProfile::uniform(double tol) { return {tol, tol, tol, tol}; }

double TolProfile::for_tier(Tier t) const {
  switch (t) {
    case Tier::Structural: return structural;
    case Tier::Moment: return moment;
    case Tier::OneInverse: return one_inverse;
    case Tier::Nested: return nested;
  }
  return nested;
}

const IdentityEntry* IdentityReport::find(const std::string& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

namespace {

struct NotApplicable {
  std::string why;
};

// Worst residual over all indices and grid points an identity was checked at.
class Worst {
 public:
  void add(double r) { value_ = std::max(value_, r); seen_ = true; }
  void add(const Matrix& lhs, const Matrix& rhs) { add(residual(lhs, rhs)); }
  double get() const {
    if (!seen_) throw NotApplicable{"no index in range for this order"};
    return value_;
  }

 private:
  double value_ = 0.0;
  bool seen_ = false;
};

struct Ctx {
  const MomentSequence& seq;
  const std::vector<cplx>& grid;
  int q;
  int m;
  int n;
  double a;
  double b;
  Parity parity;
  std::array<std::optional<MomentSequence>, 5> s;

  Ctx(const MomentSequence& sq, const std::vector<cplx>& g)
      : seq(sq), grid(g), q(sq.q()), m(sq.order()), n(half_order(sq.order())), a(sq.a()),
        b(sq.b()), parity(parity_of(sq.order())) {
    for (int r = 1; r <= 4; ++r) {
      const int need = r == 2 ? 2 : (r == 1 ? 0 : 1);
      if (m >= need) s[r] = transform_moments(seq, r);
    }
  }

  const MomentSequence& S(int r) const {
    if (!s[r]) throw NotApplicable{"too few moments for the transformed sequence"};
    return *s[r];
  }
  int order_r(int r) const { return r == 1 ? m : (r == 2 ? m - 2 : m - 1); }
  // Largest j with H_{r,j}, with Htilde_{r,j}, and with P_{r,j} defined.
  int jH(int r) const { return max_hankel_order(seq, r); }
  int jHt(int r) const { return order_r(r) < 1 ? -1 : (order_r(r) - 1) / 2; }
  int jP(int r) const { return order_r(r) < 0 ? -1 : max_first_kind_index(seq, r); }

  BlockMatrix H(int r, int j) const { return hankel_block(S(r), j); }
  BlockMatrix Ht(int r, int j) const { return hankel_block(S(r), j, 1); }
  Matrix I(int j) const { return identity(static_cast<Eigen::Index>(j + 1) * q); }
  Matrix Iq() const { return identity(q); }
  Matrix T(int j) const { return make_shift(j, q); }
  Matrix L1(int j) const { return make_truncations(j, q).first; }
  Matrix L2(int j) const { return make_truncations(j, q).second; }
  Matrix R(int j, cplx z) const { return shift_resolvent(j, q, z); }
  Matrix v(int j) const { return make_v(j, q); }
  MatrixPolynomial P(int r, int j) const { return first_kind(seq, r, j); }
  MatrixPolynomial Q(int r, int j) const { return second_kind(seq, r, j); }
};

Matrix adj(const Matrix& x) { return x.adjoint(); }

// X(conj z)^* for a matrix polynomial X.
Matrix star(const MatrixPolynomial& p, cplx z) { return adj(p(std::conj(z))); }

// Monic orthogonal polynomials of families 3 and 4 with the endpoint
// parameter replaced by c: family 3 uses c s_j - s_{j+1}, family 4 uses
// -c s_j + s_{j+1}. The reflected Hankel matrices are negative definite, so
// the solves go through LU.
struct ParamFamily {
  MatrixPolynomial P;
  MatrixPolynomial Q;
};
ParamFamily param_family(const Ctx& c, int r, double par, int j) {
  std::vector<MatrixQ> t;
  for (int k = 0; k < c.m; ++k) {
    const MatrixQ x = c.seq[k + 1] - par * c.seq[k];
    t.push_back(r == 3 ? MatrixQ(-x) : x);
  }
  const int q = c.q;
  BlockVector sig = MatrixQ::Identity(q, q);
  if (j > 0) {
    BlockMatrix h(static_cast<Eigen::Index>(j) * q, static_cast<Eigen::Index>(j) * q);
    for (int k = 0; k < j; ++k) {
      for (int l = 0; l < j; ++l) h.block(k * q, l * q, q, q) = t[k + l];
    }
    BlockVector y(static_cast<Eigen::Index>(j) * q, q);
    for (int k = 0; k < j; ++k) y.block(k * q, 0, q, q) = t[j + k];
    sig.resize(static_cast<Eigen::Index>(j + 1) * q, q);
    sig.topRows(static_cast<Eigen::Index>(j) * q) = -solve(h, y);
    sig.bottomRows(q).setIdentity();
  }
  const BlockVector u = -moment_column(c.seq, 0, j);
  const BlockVector w = (c.I(j) - par * c.T(j)) * u;
  const BlockVector ur = r == 3 ? BlockVector(-w) : w;
  return {resolvent_sandwich(sig, c.v(j), q), resolvent_sandwich(sig, ur, q)};
}

using Eval = std::function<double(const Ctx&)>;

struct Registered {
  IdentityDescriptor d;
  Eval f;
};

// Structural identities are checked for these truncation sizes.
int structural_max(const Ctx& c) { return std::max(3, c.n + 1); }

std::vector<Registered> build_registry() {
  std::vector<Registered> reg;
  auto add = [&reg](std::string id, std::string group, Applicability p, bool needs_z,
                    Requirement req, Tier tier, Eval f, std::string delegate = {}) {
    reg.push_back({{std::move(id), std::move(group), p, needs_z, req, tier, std::move(delegate)},
                   std::move(f)});
  };
  const auto Both = Applicability::Both;
  const auto Even = Applicability::Even;
  const auto Odd = Applicability::Odd;
  const auto None = Requirement::None;
  const auto Htil = Requirement::HtildeInvertible;
  const auto Gam = Requirement::GammaInvertible;

  // ---- shifts and truncations -------------------------------------------
  add("eq:LLId", "shift", Both, false, None, Tier::Structural, [](const Ctx& c) {
    Worst w;
    for (int j = 1; j <= structural_max(c); ++j) {
      const Matrix id = identity(static_cast<Eigen::Index>(j) * c.q);
      w.add(adj(c.L1(j)) * c.L1(j), id);
      w.add(adj(c.L2(j)) * c.L2(j), id);
    }
    return w.get();
  });
  add("eq:LLT", "shift", Both, false, None, Tier::Structural, [](const Ctx& c) {
    Worst w;
    for (int j = 1; j <= structural_max(c); ++j) {
      w.add(c.L1(j) * adj(c.L2(j)), c.T(j));
      w.add(adj(c.L2(j)) * c.L1(j), c.T(j - 1));
    }
    return w.get();
  });
  add("eq:LTL1", "shift", Both, false, None, Tier::Structural, [](const Ctx& c) {
    Worst w;
    for (int j = 1; j <= structural_max(c); ++j) {
      w.add(adj(c.L1(j)) * c.T(j), adj(c.L2(j)));
      w.add(c.T(j) * c.L2(j), c.L1(j));
      w.add(adj(c.L1(j)) * c.T(j) * c.L2(j), identity(static_cast<Eigen::Index>(j) * c.q));
    }
    return w.get();
  });
  add("eq:LTT", "shift", Both, false, None, Tier::Structural, [](const Ctx& c) {
    Worst w;
    for (int j = 1; j <= structural_max(c); ++j) {
      w.add(adj(c.L1(j)) * c.T(j) * c.L1(j), c.T(j - 1));
      w.add(adj(c.L2(j)) * c.T(j) * c.L2(j), c.T(j - 1));
    }
    return w.get();
  });
  add("eq:LTLT", "shift", Both, false, None, Tier::Structural, [](const Ctx& c) {
    Worst w;
    for (int j = 1; j <= structural_max(c); ++j) {
      w.add(c.T(j) * c.L1(j), c.L1(j) * adj(c.L2(j)) * c.L1(j));
      w.add(c.T(j) * c.L1(j), c.L1(j) * c.T(j - 1));
    }
    return w.get();
  });
  add("eq:LTLTtransposed", "shift", Both, false, None, Tier::Structural, [](const Ctx& c) {
    Worst w;
    for (int j = 1; j <= structural_max(c); ++j) {
      w.add(adj(c.T(j)) * c.L2(j), c.L2(j) * adj(c.L1(j)) * c.L2(j));
      w.add(adj(c.T(j)) * c.L2(j), c.L2(j) * adj(c.T(j - 1)));
    }
    return w.get();
  });
  add("eqV91", "shift", Both, true, None, Tier::Structural, [](const Ctx& c) {
    Worst w;
    for (int j = 1; j <= structural_max(c); ++j) {
      for (cplx z : c.grid) w.add(c.R(j, z) * c.L1(j), c.L1(j) * c.R(j - 1, z));
    }
    return w.get();
  });
  add("eqV9", "shift", Both, true, None, Tier::Structural, [](const Ctx& c) {
    Worst w;
    for (int j = 1; j <= structural_max(c); ++j) {
      for (cplx z : c.grid) w.add(adj(c.R(j, z)) * c.L2(j), c.L2(j) * adj(c.R(j - 1, z)));
    }
    return w.get();
  });
  add("eqJJ", "signature", Both, false, None, Tier::Structural, [](const Ctx& c) {
    const Matrix j = signature_matrices(c.q).J;
    Worst w;
    w.add(j, adj(j));
    w.add(j * j, identity(2 * c.q));
    return w.get();
  });
  add("eqJJ1", "signature", Both, false, None, Tier::Structural, [](const Ctx& c) {
    const Matrix j = signature_matrices(c.q).Jfrak;
    Worst w;
    w.add(j, adj(j));
    w.add(j * j, identity(2 * c.q));
    return w.get();
  });

  // ---- moment vectors ----------------------------------------------------
  add("eqV11", "moment-vectors", Both, false, None, Tier::Moment, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j + 1 <= c.m; ++j) {
      const UVectors u = u_vectors(c.seq, j);
      const UVectors u1 = u_vectors(c.seq, j + 1);
      w.add(u.u, adj(c.L1(j + 1)) * u1.u1);
      w.add(u1.u1, c.L1(j + 1) * u.u);
    }
    return w.get();
  });
  add("uuu001A", "moment-vectors", Both, false, None, Tier::Moment, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j + 1 <= c.m; ++j) {
      const UVectors u = u_vectors(c.seq, j);
      const BlockVector& uh = *u.u2hat;
      std::vector<MatrixQ> blocks{c.seq[1] - (c.a + c.b) * c.seq[0]};
      for (int k = 0; k < j; ++k) blocks.push_back(-c.S(2)[k]);
      w.add(uh, stack_blocks(blocks));
      w.add(uh, c.b * u.u4 + moment_column(c.S(4), 0, j));
      const UVectors un = u_vectors(c.seq, j + 1);
      // The last term enters with a minus sign; see the decisions ledger.
      w.add(uh, (c.a + c.b) * u.u - c.a * c.b * c.T(j) * u.u - adj(c.L1(j + 1)) * un.u);
    }
    return w.get();
  });

  // ---- Hankel structure and the fundamental identities -------------------
  add("eq:HH", "hankel", Both, false, None, Tier::Moment, [](const Ctx& c) {
    Worst w;
    for (int r = 1; r <= 4; ++r) {
      for (int j = 0; j + 1 <= c.jH(r); ++j) {
        const Matrix h = c.H(r, j + 1);
        w.add(c.Ht(r, j), adj(c.L2(j + 1)) * h * c.L1(j + 1));
        w.add(c.Ht(r, j), adj(c.L1(j + 1)) * h * c.L2(j + 1));
      }
    }
    return w.get();
  });
  add("eq78", "fundamental", Both, false, None, Tier::Moment, [](const Ctx& c) {
    Worst w;
    for (int r = 1; r <= 4; ++r) {
      for (int j = 0; j <= c.jH(r); ++j) {
        const Matrix h = c.H(r, j);
        const BlockVector ur = u_r(u_vectors(c.seq, j), r);
        const Matrix v = c.v(j);
        w.add(h * adj(c.T(j)) - c.T(j) * h, ur * adj(v) - v * adj(ur));
      }
    }
    return w.get();
  });

  // Identities in H_{1,j}, Htilde_{1,j}, H_{3,j}, H_{4,j} for every j with
  // Htilde_{1,j} available.
  struct J1 {
    int j;
    Matrix T, Ts, Id, v, u, u1, u3, u4, H1, Ht, H3, H4;
  };
  auto for_htilde = [](const Ctx& c, const std::function<void(const J1&, Worst&)>& f) {
    Worst w;
    for (int j = 0; j <= c.jHt(1); ++j) {
      const UVectors uv = u_vectors(c.seq, j);
      J1 d{j, c.T(j), adj(c.T(j)), c.I(j), c.v(j), uv.u, uv.u1, uv.u3, uv.u4,
           c.H(1, j), c.Ht(1, j), c.H(3, j), c.H(4, j)};
      f(d, w);
    }
    return w.get();
  };
  auto moment_id = [&](std::string id, std::function<void(const Ctx&, const J1&, Worst&)> f,
                       Tier tier = Tier::Moment) {
    add(std::move(id), "hankel", Both, false, None, tier, [for_htilde, f](const Ctx& c) {
      return for_htilde(c, [&](const J1& d, Worst& w) { f(c, d, w); });
    });
  };
  moment_id("eq833", [](const Ctx&, const J1& d, Worst& w) {
    w.add(d.v * adj(d.u) + d.H1, d.T * d.Ht);
  });
  moment_id("eq833transposed", [](const Ctx&, const J1& d, Worst& w) {
    w.add(d.u * adj(d.v) + d.H1, d.Ht * d.Ts);
  });
  moment_id("eq:H3H4", [](const Ctx& c, const J1& d, Worst& w) {
    w.add(d.H3, c.b * d.H1 - d.Ht);
    w.add(d.H4, -c.a * d.H1 + d.Ht);
  });
  moment_id("eqHtH34", [](const Ctx& c, const J1& d, Worst& w) {
    w.add(d.Ht, (c.a * d.H3 + c.b * d.H4) / (c.b - c.a));
  });
  moment_id("eqV670", [](const Ctx& c, const J1& d, Worst& w) {
    w.add(c.a * d.u * adj(d.v) + d.Ht * (d.Id - c.a * d.Ts), d.H4);
  });
  moment_id("eqV672", [](const Ctx& c, const J1& d, Worst& w) {
    w.add(c.b * d.u * adj(d.v) + d.Ht * (d.Id - c.b * d.Ts), -d.H3);
  });
  moment_id("eq83", [](const Ctx& c, const J1& d, Worst& w) {
    w.add(d.T * d.H3, -d.v * adj(d.u) - (d.Id - c.b * d.T) * d.H1);
  });
  moment_id("eqV66", [](const Ctx& c, const J1& d, Worst& w) {
    w.add(d.H3 * d.Ts, -d.u * adj(d.v) - d.H1 * (d.Id - c.b * d.Ts));
  });
  moment_id("eq82", [](const Ctx& c, const J1& d, Worst& w) {
    w.add(d.T * d.H4, d.v * adj(d.u) + (d.Id - c.a * d.T) * d.H1);
  });
  moment_id("eqV66a", [](const Ctx& c, const J1& d, Worst& w) {
    w.add(d.H4 * d.Ts, d.u * adj(d.v) + d.H1 * (d.Id - c.a * d.Ts));
  });
  moment_id("eqV67", [](const Ctx& c, const J1& d, Worst& w) {
    w.add(d.u3 * adj(d.v), (d.Id - c.b * d.T) * (d.H3 * d.Ts + d.H1 * (d.Id - c.b * d.Ts)));
  });
  moment_id("eqV671", [](const Ctx& c, const J1& d, Worst& w) {
    w.add(d.u4 * adj(d.v), (d.Id - c.a * d.T) * (d.H4 * d.Ts - d.H1 * (d.Id - c.a * d.Ts)));
  });
  moment_id("eqV88", [](const Ctx& c, const J1& d, Worst& w) {
    w.add(d.H3 * d.Ts, d.u3 * adj(d.v) - c.b * d.v * adj(d.u1) - (d.Id - c.b * d.T) * d.H1);
  });
  moment_id("eqV99", [](const Ctx& c, const J1& d, Worst& w) {
    w.add(d.H4 * d.Ts, d.u4 * adj(d.v) + c.a * d.v * adj(d.u1) + (d.Id - c.a * d.T) * d.H1);
  });
  moment_id("eqV41", [](const Ctx& c, const J1& d, Worst& w) {
    const Matrix l1s = adj(c.L1(d.j + 1));
    const UVectors up = u_vectors(c.seq, d.j + 1);
    w.add(c.a * d.v * adj(up.u1) + (d.Id - c.a * d.T) * d.Ht * l1s, d.H4 * l1s);
  });
  moment_id("eq:H4H1H3", [](const Ctx&, const J1& d, Worst& w) {
    w.add(solve_hermitian(d.H4, d.Ht) * inverse(d.H3), solve_hermitian(d.H3, d.Ht) * inverse(d.H4));
  }, Tier::Nested);
  moment_id("eqZZ1", [](const Ctx& c, const J1& d, Worst& w) {
    w.add(c.a * inverse(d.H4) + c.b * inverse(d.H3),
          (c.b - c.a) * solve_hermitian(d.H4, d.Ht) * inverse(d.H3));
  }, Tier::Nested);

  add("eqV4", "hankel", Both, false, None, Tier::Moment, [](const Ctx& c) {
    Worst w;
    for (int j = 1; j <= c.jH(1); ++j) {
      const BlockVector u = u_vectors(c.seq, j - 1).u;
      w.add(u * adj(c.v(j)) + adj(c.L2(j)) * c.H(1, j), c.Ht(1, j - 1) * adj(c.L1(j)));
    }
    return w.get();
  });
  add("eq:H2H3H4", "hankel", Both, false, None, Tier::Moment, [](const Ctx& c) {
    Worst w;
    for (int j = 1; j - 1 <= c.jH(2); ++j) {
      const Matrix h2 = c.H(2, j - 1);
      w.add(h2, c.b * c.H(4, j - 1) - c.Ht(4, j - 1));
      w.add(h2, -c.a * c.H(3, j - 1) + c.Ht(3, j - 1));
      if (j <= c.jHt(1)) {
        w.add(h2, -c.a * c.b * c.H(1, j - 1) + (c.a + c.b) * c.Ht(1, j - 1) -
                      adj(c.L2(j)) * c.Ht(1, j) * c.L1(j));
      }
    }
    return w.get();
  });
  add("eqV77", "hankel", Both, false, None, Tier::Moment, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= c.jH(2); ++j) {
      const UVectors u = u_vectors(c.seq, j);
      const Matrix v = c.v(j);
      w.add(c.T(j) * c.H(2, j),
            -c.b * u.u4 * adj(v) + v * adj(*u.u2hat) - c.H(4, j) * (c.I(j) - c.b * adj(c.T(j))));
    }
    return w.get();
  });
  add("eq83a", "hankel", Both, false, None, Tier::Moment, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j + 1 <= c.jH(1); ++j) {
      w.add(c.H(1, j) * adj(c.L1(j + 1)), adj(c.L2(j + 1)) * c.H(1, j + 1) * adj(c.T(j + 1)));
    }
    return w.get();
  });
  add("eqV7", "hankel", Both, false, None, Tier::Moment, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j + 1 <= c.jH(1); ++j) {
      const UVectors u = u_vectors(c.seq, j);
      const UVectors up = u_vectors(c.seq, j + 1);
      w.add(u.u4 * adj(c.v(j + 1)) + c.a * c.v(j) * adj(up.u1) +
                (c.I(j) - c.a * c.T(j)) * adj(c.L2(j + 1)) * c.H(1, j + 1),
            c.H(4, j) * adj(c.L1(j + 1)));
    }
    return w.get();
  });

  // ---- Schur complements and Sigma ----------------------------------------
  add("sHHj", "schur", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int r = 1; r <= 4; ++r) {
      for (int j = 1; j <= std::min(c.jH(r), c.jP(r)); ++j) {
        const MomentSequence& sr = c.S(r);
        Matrix row(c.q, static_cast<Eigen::Index>(j + 1) * c.q);
        row << adj(moment_column(sr, j, 2 * j - 1)), sr[2 * j];
        w.add(schur_complement(c.seq, r, j), row * sigma(c.seq, r, j));
      }
    }
    return w.get();
  });
  add("eqA01", "schur", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 1; j <= std::min(c.jH(1), c.jP(1)); ++j) {
      const Eigen::Index k = static_cast<Eigen::Index>(j) * c.q;
      Matrix lhs = zeros(k + c.q, k + c.q);
      lhs.topLeftCorner(k, k) = inverse(c.H(1, j - 1));
      const BlockVector sg = sigma(c.seq, 1, j);
      lhs += sg * solve_hermitian(schur_complement(c.seq, 1, j), adj(sg));
      w.add(inverse(c.H(1, j)), lhs);
    }
    return w.get();
  });
  add("eq79", "schur", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int r = 1; r <= 4; ++r) {
      for (int j = 1; j <= std::min(c.jH(r), c.jP(r)); ++j) {
        const Matrix h = c.H(r, j);
        const BlockVector sg = sigma(c.seq, r, j);
        const double scale = h.norm() * sg.norm();
        w.add((c.T(j) * h * sg).norm() / (1.0 + scale));
        w.add((adj(c.L2(j)) * h * sg).norm() / (1.0 + scale));
      }
    }
    return w.get();
  });
  add("eq:lastcolumn", "schur", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int r = 1; r <= 4; ++r) {
      for (int j = 1; j <= std::min(c.jH(r), c.jP(r)); ++j) {
        BlockVector rhs = zeros(static_cast<Eigen::Index>(j + 1) * c.q, c.q);
        rhs.bottomRows(c.q) = schur_complement(c.seq, r, j);
        w.add(c.H(r, j) * sigma(c.seq, r, j), rhs);
      }
    }
    return w.get();
  });

  // ---- annihilation by Sigma -----------------------------------------------
  add("pqH00", "sigma-lemma", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jH(1), c.jP(3)); ++j) {
      const BlockVector sg = sigma(c.seq, 3, j);
      const UVectors u = u_vectors(c.seq, j);
      w.add(c.v(j) * adj(u.u) * sg, -(c.I(j) - c.b * c.T(j)) * c.H(1, j) * sg);
    }
    return w.get();
  });
  add("eq362a", "sigma-lemma", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jH(4), c.jP(2)); ++j) {
      const BlockVector sg = sigma(c.seq, 2, j);
      const UVectors u = u_vectors(c.seq, j);
      const Matrix v = c.v(j);
      w.add((c.b * u.u4 * adj(v) - v * adj(*u.u2hat)) * sg,
            -c.H(4, j) * (c.I(j) - c.b * adj(c.T(j))) * sg);
    }
    return w.get();
  });
  add("eqn362", "sigma-lemma", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jH(1), c.jP(3)); ++j) {
      const BlockVector sg = sigma(c.seq, 3, j);
      const UVectors u = u_vectors(c.seq, j);
      const Matrix v = c.v(j);
      w.add((v * adj(u.u3) - c.b * u.u1 * adj(v)) * sg,
            c.H(1, j) * (c.I(j) - c.b * adj(c.T(j))) * sg);
    }
    return w.get();
  });
  add("eqn361", "sigma-lemma", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jH(1), c.jP(4)); ++j) {
      const BlockVector sg = sigma(c.seq, 4, j);
      const UVectors u = u_vectors(c.seq, j);
      const Matrix v = c.v(j);
      w.add((v * adj(u.u4) + c.a * u.u1 * adj(v)) * sg,
            -c.H(1, j) * (c.I(j) - c.a * adj(c.T(j))) * sg);
    }
    return w.get();
  });
  add("eqV10", "sigma-lemma", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jH(4), c.jP(1) - 1); ++j) {
      const BlockVector sg = sigma(c.seq, 1, j + 1);
      const UVectors u = u_vectors(c.seq, j);
      const UVectors up = u_vectors(c.seq, j + 1);
      w.add((u.u4 * adj(c.v(j + 1)) + c.a * c.v(j) * adj(up.u1)) * sg,
            c.H(4, j) * adj(c.L1(j + 1)) * sg);
    }
    return w.get();
  });
  add("eq502", "sigma-lemma", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jH(4), c.jP(1) - 1); ++j) {
      const BlockVector sg = sigma(c.seq, 1, j + 1);
      const UVectors u = u_vectors(c.seq, j);
      w.add(c.H(4, j) * adj(c.R(j, c.a)) * adj(c.L1(j + 1)) * sg,
            c.R(j, c.a) * u.u4 * adj(c.v(j + 1)) * adj(c.R(j + 1, c.a)) * sg);
    }
    return w.get();
  });
  add("eqn363", "sigma-lemma", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jP(3), c.jP(4)); ++j) {
      const BlockVector s3 = sigma(c.seq, 3, j);
      const BlockVector s4 = sigma(c.seq, 4, j);
      const UVectors u = u_vectors(c.seq, j);
      const Matrix v = c.v(j);
      const Matrix ra = c.R(j, c.a);
      w.add(adj(s4) * (c.b * u.u4 * adj(v) + c.a * v * adj(u.u3)) * s3,
            (c.b - c.a) * adj(s4) * ra * u.u4 * adj(v) * adj(ra) * s3);
    }
    return w.get();
  });

  // ---- polynomial identities ---------------------------------------------
  add("eqQQPP1", "polynomials", Both, true, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jP(3), c.jP(4)); ++j) {
      for (double par : {c.b, c.a}) {
        const ParamFamily f3 = param_family(c, 3, par, j);
        const ParamFamily f4 = param_family(c, 4, par, j);
        for (cplx z : c.grid) w.add(f3.P(z), f4.P(z));
      }
      // With the natural parameters the families are the library ones.
      for (cplx z : c.grid) {
        w.add(param_family(c, 3, c.b, j).P(z), c.P(3, j)(z));
        w.add(param_family(c, 4, c.a, j).P(z), c.P(4, j)(z));
      }
    }
    return w.get();
  });
  add("eqQQPP2", "polynomials", Both, true, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jP(3), c.jP(4)); ++j) {
      for (double par : {c.b, c.a}) {
        const ParamFamily f3 = param_family(c, 3, par, j);
        const ParamFamily f4 = param_family(c, 4, par, j);
        for (cplx z : c.grid) w.add(f3.Q(z), -f4.Q(z));
      }
      for (cplx z : c.grid) {
        w.add(param_family(c, 3, c.b, j).Q(z), c.Q(3, j)(z));
        w.add(param_family(c, 4, c.a, j).Q(z), c.Q(4, j)(z));
      }
    }
    return w.get();
  });
  add("rem:Q0P0", "polynomials", Both, true, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int r = 1; r <= 4; ++r) {
      for (int j = 0; j <= c.jP(r); ++j) {
        const MatrixPolynomial p = c.P(r, j);
        const MatrixPolynomial qq = c.Q(r, j);
        for (cplx z : c.grid) w.add(qq(z) * star(p, z), p(z) * star(qq, z));
      }
    }
    return w.get();
  });
  add("pqHHa", "endpoint", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jH(1), c.jP(4)); ++j) {
      w.add(schur_complement(c.seq, 1, j), -c.P(1, j)(c.a) * adj(c.Q(4, j)(c.a)));
    }
    for (int j = 1; j - 1 <= c.jH(2) && j <= c.jP(3); ++j) {
      w.add(schur_complement(c.seq, 2, j - 1), -c.Q(2, j - 1)(c.a) * adj(c.P(3, j)(c.a)));
    }
    return w.get();
  });
  add("pqHHa11", "endpoint", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jH(3), c.jP(2)); ++j) {
      w.add(schur_complement(c.seq, 3, j), c.P(3, j)(c.a) * adj(c.Q(2, j)(c.a)));
    }
    for (int j = 0; j <= std::min(c.jH(4), c.jP(1) - 1); ++j) {
      w.add(schur_complement(c.seq, 4, j), c.Q(4, j)(c.a) * adj(c.P(1, j + 1)(c.a)));
    }
    return w.get();
  });
  add("pqH1A", "endpoint", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jH(1), c.jP(3)); ++j) {
      w.add(schur_complement(c.seq, 1, j), c.P(1, j)(c.b) * adj(c.Q(3, j)(c.b)));
    }
    return w.get();
  });
  add("pqH0A", "endpoint", Both, true, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jH(1), c.jP(3)); ++j) {
      const Matrix h = c.H(1, j);
      const Matrix right = solve_hermitian(h, c.R(j, c.b) * c.v(j)) * adj(c.Q(3, j)(c.b));
      const MatrixPolynomial p3 = c.P(3, j);
      for (cplx z : c.grid) {
        w.add(adj(c.v(j)) * adj(c.R(j, std::conj(z))) * right, star(p3, z));
      }
    }
    return w.get();
  });
  auto endpoint_resolvent = [](const Ctx& c, double x, int r) {
    Worst w;
    for (int j = 0; j <= std::min(c.jH(1), c.jP(r)); ++j) {
      const UVectors u = u_vectors(c.seq, j);
      const Matrix right = solve_hermitian(c.H(1, j), c.R(j, x) * c.v(j));
      const MatrixPolynomial qq = c.Q(r, j);
      const Matrix qx = adj(qq(x));
      for (cplx z : c.grid) {
        const Matrix lhs = c.Iq() - (z - x) * adj(u.u1) * adj(c.R(j, std::conj(z))) * right;
        w.add(lhs, times_inverse(star(qq, z), qx));
      }
    }
    return w.get();
  };
  add("pqH2B", "endpoint", Both, true, None, Tier::Nested,
      [endpoint_resolvent](const Ctx& c) { return endpoint_resolvent(c, c.a, 4); });
  add("pqH2C", "endpoint", Both, true, None, Tier::Nested,
      [endpoint_resolvent](const Ctx& c) { return endpoint_resolvent(c, c.b, 3); });
  add("eqQaa", "endpoint", Both, false, None, Tier::Nested, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jH(1), c.jP(4)); ++j) {
      const UVectors u = u_vectors(c.seq, j);
      const Matrix lhs = c.Iq() + c.a * adj(c.v(j)) * adj(c.R(j, c.a)) *
                                      solve_hermitian(c.H(1, j), u.u1);
      const MatrixPolynomial q4 = c.Q(4, j);
      w.add(lhs, solve(q4(c.a), q4(0.0)));
    }
    return w.get();
  });
  add("eq:rem00B:2", "endpoint", Both, false, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jP(3), c.jP(4)); ++j) {
      const MatrixPolynomial p3 = c.P(3, j), q3 = c.Q(3, j), p4 = c.P(4, j), q4 = c.Q(4, j);
      w.add((c.b - c.a) * q4(c.a) * adj(p3(c.a)),
            c.b * q4(0.0) * adj(p3(0.0)) + c.a * p4(0.0) * adj(q3(0.0)));
    }
    return w.get();
  });
  add("eqttH1n", "endpoint", Even, false, Htil, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 1; j <= c.n; ++j) {
      try {
        w.add(tilde_schur_complement(c.seq, j),
              -tilde_second_kind(c.seq, j)(0.0) * adj(c.P(1, j + 1)(0.0)));
      } catch (const SingularMatrix&) {
        // Htilde_{1,j-1} singular at this index; other indices still count.
      }
    }
    return w.get();
  });
  add("eq:L1tildeH", "endpoint", Even, false, Htil, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int j = 0; j <= std::min(c.jHt(1), c.jP(1) - 1); ++j) {
      const Matrix ht = c.Ht(1, j);
      if (!is_invertible(ht)) continue;
      const BlockVector sg = sigma(c.seq, 1, j + 1);
      const BlockVector u = u_vectors(c.seq, j).u;
      w.add(adj(sg) * c.L1(j + 1), adj(sg) * c.v(j + 1) * adj(solve(ht, u)));
    }
    return w.get();
  });

  // ---- Kovalishina matrix ------------------------------------------------
  add("eqVn2", "kovalishina", Both, true, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int r = 1; r <= 4; ++r) {
      const int j = c.jH(r);
      if (j < 0) continue;
      w.add(j_property_check(c.seq, r, j, c.grid).inverse_residual);
    }
    return w.get();
  }, "resolvent.j_property_check");
  add("eqVn1", "kovalishina", Both, true, None, Tier::OneInverse, [](const Ctx& c) {
    Worst w;
    for (int r = 1; r <= 4; ++r) {
      const int j = c.jH(r);
      if (j < 0) continue;
      const JPropertyResult res = j_property_check(c.seq, r, j, c.grid);
      if (res.upper_points > 0) w.add(std::max(0.0, res.max_eigenvalue));
    }
    return w.get();
  }, "resolvent.j_property_check");

  // ---- even number of moments ------------------------------------------
  auto even = [&](std::string id, std::function<void(const Ctx&, const EvenResolvent&, Worst&)> f,
                  std::string delegate = {}) {
    add(std::move(id), "even-coupling", Even, false, Htil, Tier::Nested, [f](const Ctx& c) {
      const EvenResolvent res(c.seq);
      Worst w;
      f(c, res, w);
      return w.get();
    }, std::move(delegate));
  };
  even("eqW0", [](const Ctx& c, const EvenResolvent& res, Worst& w) {
    const int n = c.n;
    const UVectors u = u_vectors(c.seq, n);
    w.add(res.coupling().d,
          c.Iq() - c.a * adj(c.v(n)) * solve_hermitian(c.H(4, n), c.R(n, c.a) * u.u4));
  });
  even("eqW01", [](const Ctx& c, const EvenResolvent& res, Worst& w) {
    const int n = c.n;
    const UVectors u = u_vectors(c.seq, n);
    w.add(inverse(adj(res.coupling().d)),
          c.Iq() + c.a * adj(u.u) * solve(c.Ht(1, n), c.R(n, c.a) * c.v(n)));
  });
  even("eqW1", [](const Ctx& c, const EvenResolvent& res, Worst& w) {
    w.add(res.coupling().M, c.a * times_inverse(adj(res.Q1()(0.0)), adj(res.P1()(0.0))));
  });
  even("eqW3", [](const Ctx& c, const EvenResolvent& res, Worst& w) {
    w.add(res.coupling().M * res.coupling().d,
          c.a * times_inverse(adj(res.Q1()(0.0)), adj(res.P1()(c.a))));
  });
  even("eqW6", [](const Ctx& c, const EvenResolvent& res, Worst& w) {
    const int n = c.n;
    w.add(times_inverse_adjoint(res.coupling().N, res.coupling().d),
          -c.b * adj(c.v(n)) * solve_hermitian(c.H(3, n), c.R(n, c.a) * c.v(n)));
  });
  even("eqW5", [](const Ctx& c, const EvenResolvent& res, Worst& w) {
    w.add(times_inverse_adjoint(res.coupling().N, res.coupling().d),
          -c.b * times_inverse(adj(res.P2()(0.0)), adj(res.Q2()(c.a))));
  });
  even("eqW2", [](const Ctx& c, const EvenResolvent& res, Worst& w) {
    const Matrix rhs = -c.b * times_inverse(adj(res.P2()(0.0)), adj(res.Q2()(c.a))) *
                       solve(res.P1()(c.a), res.P1()(0.0));
    w.add(res.coupling().N, rhs);
  });
  even("eqW4", [](const Ctx& c, const EvenResolvent& res, Worst& w) {
    const EvenCoupling& k = res.coupling();
    w.add(times_inverse_adjoint(c.Iq() + k.M * k.N, k.d),
          times_inverse(adj(res.Q2()(0.0)), adj(res.Q2()(c.a))));
  });
  even("eq:rem00B:1", [](const Ctx& c, const EvenResolvent& res, Worst& w) {
    w.add(res.P1()(c.a) * adj(res.Q2()(c.a)),
          c.a * c.b * res.Q1()(0.0) * adj(res.P2()(0.0)) + res.P1()(0.0) * adj(res.Q2()(0.0)));
  });
  for (int k = 0; k < 4; ++k) {
    even("dem" + std::to_string(k + 1) + "m", [k](const Ctx& c, const EvenResolvent& res, Worst& w) {
      for (cplx z : c.grid) {
        if (std::abs(z - c.a) < 1e-12) continue;
        w.add(res.block_residuals(z)[static_cast<std::size_t>(k)]);
      }
    }, "resolvent.EvenResolvent.block_residuals");
  }
  even("eqn434m1", [](const Ctx& c, const EvenResolvent&, Worst& w) {
    w.add(coupling_residual(c.seq, c.grid));
  }, "resolvent.coupling_residual");
  even("remsep1", [](const Ctx& c, const EvenResolvent&, Worst& w) {
    w.add(compare_expansion(c.seq, Center::Zero).max_diff());
  }, "expansions.compare_expansion");
  even("remsep3", [](const Ctx& c, const EvenResolvent&, Worst& w) {
    w.add(compare_expansion(c.seq, Center::A).max_diff());
  }, "expansions.compare_expansion");

  // ---- odd number of moments -------------------------------------------
  auto odd = [&](std::string id, std::function<void(const Ctx&, const OddResolvent&, Worst&)> f,
                 std::string delegate = {}) {
    add(std::move(id), "odd-coupling", Odd, false, Gam, Tier::Nested, [f](const Ctx& c) {
      const OddResolvent res(c.seq);
      Worst w;
      f(c, res, w);
      return w.get();
    }, std::move(delegate));
  };
  odd("eqn38A", [](const Ctx&, const OddResolvent& res, Worst& w) {
    w.add(res.coupling().Gamma_a, -times_inverse(adj(res.P4()(0.0)), adj(res.Q4()(0.0))));
  });
  odd("eqn39A", [](const Ctx&, const OddResolvent& res, Worst& w) {
    w.add(res.coupling().Gamma_b, times_inverse(adj(res.P3()(0.0)), adj(res.Q3()(0.0))));
  });
  odd("eqn43A", [](const Ctx&, const OddResolvent& res, Worst& w) {
    w.add(res.coupling().Gamma_a, adj(res.coupling().Gamma_a));
  });
  odd("eqn44A", [](const Ctx&, const OddResolvent& res, Worst& w) {
    w.add(res.coupling().Gamma_b, adj(res.coupling().Gamma_b));
  });
  odd("eqn45a", [](const Ctx& c, const OddResolvent& res, Worst& w) {
    w.add(res.coupling().M, -c.a * times_inverse(adj(res.P4()(0.0)), adj(res.Q4()(0.0))));
  });
  odd("eqn001", [](const Ctx& c, const OddResolvent& res, Worst& w) {
    const Matrix rhs = times_inverse(adj(res.Q3()(0.0)), adj(res.P3()(c.a))) *
                       solve(res.Q4()(c.a), res.Q4()(0.0)) / (c.b - c.a);
    w.add(res.coupling().N, rhs);
  });
  odd("eqn101", [](const Ctx& c, const OddResolvent& res, Worst& w) {
    w.add(times_inverse_adjoint(res.coupling().N, res.coupling().d),
          times_inverse(adj(res.Q3()(0.0)), adj(res.P3()(c.a))) / (c.b - c.a));
  });
  odd("eqn102", [](const Ctx& c, const OddResolvent& res, Worst& w) {
    const OddCoupling& k = res.coupling();
    w.add(times_inverse_adjoint(c.Iq() + k.M * k.N, k.d),
          c.b * times_inverse(adj(res.P3()(0.0)), adj(res.P3()(c.a))) / (c.b - c.a));
  });
  for (int k = 0; k < 4; ++k) {
    odd("dem" + std::to_string(k + 1), [k](const Ctx& c, const OddResolvent& res, Worst& w) {
      for (cplx z : c.grid) w.add(res.block_residuals(z)[static_cast<std::size_t>(k)]);
    }, "resolvent.OddResolvent.block_residuals");
  }
  odd("eqn434", [](const Ctx& c, const OddResolvent&, Worst& w) {
    w.add(coupling_residual(c.seq, c.grid));
  }, "resolvent.coupling_residual");
  odd("remsep2", [](const Ctx& c, const OddResolvent&, Worst& w) {
    w.add(compare_expansion(c.seq, Center::Zero).max_diff());
  }, "expansions.compare_expansion");
  odd("remsep4", [](const Ctx& c, const OddResolvent&, Worst& w) {
    w.add(compare_expansion(c.seq, Center::A).max_diff());
  }, "expansions.compare_expansion");

  return reg;
}

const std::vector<Registered>& registry() {
  static const std::vector<Registered> reg = build_registry();
  return reg;
}

}  // namespace

const std::vector<IdentityDescriptor>& catalog() {
  static const std::vector<IdentityDescriptor> cat = [] {
    std::vector<IdentityDescriptor> out;
    for (const auto& r : registry()) out.push_back(r.d);
    return out;
  }();
  return cat;
}

const IdentityDescriptor* find_identity(const std::string& id) {
  for (const auto& d : catalog()) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

IdentityReport run_battery(const MomentSequence& seq, const std::vector<cplx>& grid,
                           const TolProfile& profile, std::optional<std::uint64_t> seed) {
  IdentityReport report;
  report.instance = {seq.q(), seq.order(), seq.a(), seq.b(), seed};
  const Ctx ctx(seq, grid);
  for (const auto& r : registry()) {
    IdentityEntry e;
    e.id = r.d.id;
    e.tol = profile.for_tier(r.d.tier);
    const bool wrong_parity =
        (r.d.parity == Applicability::Even && ctx.parity != Parity::Even) ||
        (r.d.parity == Applicability::Odd && ctx.parity != Parity::Odd);
    if (wrong_parity) {
      e.note = "requires an " + to_string(r.d.parity) + " number of moments";
    } else {
      try {
        const double res = r.f(ctx);
        e.residual = res;
        e.status = std::isfinite(res) && res <= e.tol ? Status::Pass : Status::Fail;
      } catch (const NotApplicable& na) {
        e.note = na.why;
      } catch (const AssumptionViolated& ex) {
        e.note = std::string("assumption violated: ") + ex.what();
      } catch (const SingularMatrix& ex) {
        e.note = std::string("singular matrix: ") + ex.what();
      } catch (const InvalidArgument& ex) {
        e.note = std::string("not defined for this order: ") + ex.what();
      }
    }
    report.overall = report.overall && e.pass();
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace thmm
