#include <functional>
#include <random>

#include "doctest.h"
#include "sts/lp.hpp"
#include "sts/rational.hpp"

using namespace sts;

namespace {

bool is_integral(const Rational& x) { return denominator(x) == 1; }

}  // namespace

TEST_CASE("fixed variable") {
  LinearProgram lp;
  int x = lp.add_var();
  lp.add_row({{{x, Rational(1)}}, RowSense::Eq, Rational(1), "fix"});
  auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.values[x] == Rational(1));
}

TEST_CASE("infeasible box with certificate") {
  LinearProgram lp;
  int x = lp.add_var(Rational(0), Rational(0));
  lp.add_row({{{x, Rational(1)}}, RowSense::Ge, Rational(1), "lb"});
  auto r = solve_lp(lp);
  CHECK(r.status == LpStatus::Infeasible);
  REQUIRE(!r.certificate_rows.empty());
  CHECK(r.certificate_rows[0] == 0);
}

TEST_CASE("unbounded objective is reported distinctly") {
  LinearProgram lp;
  int x = lp.add_var();
  lp.objective[x] = Rational(-1);
  CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("small optimization with bounds and shifts") {
  // min x + y subject to x + y >= 3, x in [1, 5], y in [-2, 4]
  LinearProgram lp;
  int x = lp.add_var(Rational(1), Rational(5));
  int y = lp.add_var(Rational(-2), Rational(4));
  lp.add_row({{{x, Rational(1)}, {y, Rational(1)}}, RowSense::Ge, Rational(3), "cover"});
  lp.objective[x] = Rational(1);
  lp.objective[y] = Rational(1);
  auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == Rational(3));
  CHECK(r.values[x] + r.values[y] == Rational(3));
  CHECK(r.values[x] >= Rational(1));
  CHECK(r.values[y] >= Rational(-2));
}

TEST_CASE("degenerate equalities do not cycle (Bland)") {
  LinearProgram lp;
  int a = lp.add_var(Rational(0), Rational(1));
  int b = lp.add_var(Rational(0), Rational(1));
  int c = lp.add_var(Rational(0), Rational(1));
  lp.add_row({{{a, Rational(1)}, {b, Rational(1)}}, RowSense::Eq, Rational(1), "r1"});
  lp.add_row({{{b, Rational(1)}, {c, Rational(1)}}, RowSense::Eq, Rational(1), "r2"});
  lp.add_row({{{a, Rational(1)}, {c, Rational(-1)}}, RowSense::Eq, Rational(0), "r3"});
  lp.objective[b] = Rational(1);
  auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.values[a] + r.values[b] == Rational(1));
  CHECK(r.values[b] + r.values[c] == Rational(1));
  CHECK(r.values[a] == r.values[c]);
}

TEST_CASE("interval-matrix LPs have integral vertices") {
  // consecutive-ones rows with integral right-hand sides: vertices must be
  // integral; cross-check feasibility against exhaustive integer search
  std::mt19937_64 rng(123456);
  for (int it = 0; it < 1000; ++it) {
    int n = 2 + static_cast<int>(rng() % 5);
    LinearProgram lp;
    std::vector<int> ub(n);
    for (int j = 0; j < n; ++j) {
      ub[j] = 1 + static_cast<int>(rng() % 3);
      lp.add_var(Rational(0), Rational(ub[j]));
    }
    struct Win {
      int lo, hi;
      long rhs;
      bool ge;
    };
    std::vector<Win> wins;
    int rows = 1 + static_cast<int>(rng() % 4);
    for (int r = 0; r < rows; ++r) {
      int lo = static_cast<int>(rng() % n);
      int hi = lo + static_cast<int>(rng() % (n - lo));
      long rhs = static_cast<long>(rng() % 5);
      bool ge = rng() % 4 == 0;
      wins.push_back({lo, hi, rhs, ge});
      LinearRow row;
      for (int j = lo; j <= hi; ++j) row.coeffs[j] = 1;
      row.sense = ge ? RowSense::Ge : RowSense::Le;
      row.rhs = rhs;
      lp.add_row(std::move(row));
    }
    if (rng() % 2) {
      for (int j = 0; j < n; ++j) lp.objective[j] = Rational(1 + (rng() % 3));
    }
    auto r = solve_lp(lp);

    // exhaustive integer-point search over the box
    bool any = false;
    std::vector<int> v(n, 0);
    std::function<void(int)> walk = [&](int j) {
      if (any) return;
      if (j == n) {
        for (const auto& w : wins) {
          long s = 0;
          for (int i = w.lo; i <= w.hi; ++i) s += v[i];
          if (w.ge ? s < w.rhs : s > w.rhs) return;
        }
        any = true;
        return;
      }
      for (v[j] = 0; v[j] <= ub[j]; ++v[j]) walk(j + 1);
      v[j] = 0;
    };
    walk(0);

    if (r.status == LpStatus::Optimal) {
      for (int j = 0; j < n; ++j) {
        CHECK(is_integral(r.values[j]));
        CHECK(r.values[j] >= 0);
        CHECK(r.values[j] <= ub[j]);
      }
      CHECK(any);
    } else {
      CHECK(r.status == LpStatus::Infeasible);
      CHECK_FALSE(any);
    }
  }
}
