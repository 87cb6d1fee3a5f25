#include "scal/genetic.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "scal/errors.hpp"

namespace scal {

// ---------------------------------------------------------------------------
// simplest values between rational bounds

Rational simplest_rational_between(const std::optional<Rational>& lo,
                                   const std::optional<Rational>& hi) {
  if (lo && hi && !(*lo < *hi)) raise(Errc::IllFormed, "empty interval");
  if (!lo && !hi) return Rational(0);
  if (!hi) {
    // simplest value above lo
    if (lo->sign() < 0) return Rational(0);
    return Rational(mpz_class(lo->floor() + 1));
  }
  if (!lo) {
    if (hi->sign() > 0) return Rational(0);
    return Rational(mpz_class(hi->ceil() - 1));
  }
  // integer if possible: the one nearest zero
  if (*lo < Rational(0) && Rational(0) < *hi) return Rational(0);
  if (lo->sign() >= 0) {
    Rational n{mpz_class(lo->floor() + 1)};
    if (n < *hi) return n;
  } else {
    Rational n{mpz_class(hi->ceil() - 1)};
    if (*lo < n) return n;
  }
  // otherwise binary descent from the enclosing unit interval
  Rational a(lo->floor());
  Rational b = a + Rational(1);
  for (;;) {
    Rational mid = (a + b) / Rational(2);
    if (mid <= *lo)
      a = mid;
    else if (mid >= *hi)
      b = mid;
    else
      return mid;
  }
}

namespace {

std::optional<Rational> rational_of(const Surreal& s) {
  return s.as_rational();
}

}  // namespace

Surreal simplest_between(const std::vector<Surreal>& left,
                         const std::vector<Surreal>& right) {
  for (const Surreal& l : left)
    for (const Surreal& r : right)
      if (Surreal::compare(l, r) >= 0)
        raise(Errc::IllFormed, "left option " + l.str() + " >= right option " + r.str());
  std::optional<Rational> lo, hi;
  for (const Surreal& l : left) {
    auto q = rational_of(l);
    if (!q) raise(Errc::UnsupportedClass, "simplest_between needs rational endpoints");
    if (!lo || *q > *lo) lo = *q;
  }
  for (const Surreal& r : right) {
    auto q = rational_of(r);
    if (!q) raise(Errc::UnsupportedClass, "simplest_between needs rational endpoints");
    if (!hi || *q < *hi) hi = *q;
  }
  return Surreal(simplest_rational_between(lo, hi));
}

// ---------------------------------------------------------------------------
// birthdays

namespace {

// walk of the birth order toward a rational; step count is the birthday
long dyadic_walk_steps(const Rational& q) {
  Rational x(0);
  std::optional<Rational> lo, hi;
  long steps = 0;
  while (x != q) {
    ++steps;
    if (q < x) {
      hi = x;
      x = lo ? (*lo + *hi) / Rational(2) : x - Rational(1);
    } else {
      lo = x;
      x = hi ? (*lo + *hi) / Rational(2) : x + Rational(1);
    }
    if (steps > 100000) raise(Errc::Internal, "runaway birthday walk");
  }
  return steps;
}

}  // namespace

Ordinal birthday(const Surreal& x) {
  if (x.is_zero()) return Ordinal();
  if (auto r = x.as_exact_real()) {
    if (auto q = r->as_rational()) {
      if (q->is_dyadic()) return Ordinal::from_uint(static_cast<std::uint64_t>(dyadic_walk_steps(*q)));
      return Ordinal::omega();  // day omega: all other reals
    }
    // a symbolic real constant is still a real
    return Ordinal::omega();
  }
  if (auto o = x.as_ordinal()) return *o;
  if (auto no = (-x).as_ordinal()) return *no;
  // +-w^-1 is also born on day omega, next to the reals
  if (x.term_count() == 1 && !x.terms()[0].key.has_atom()) {
    auto c = x.terms()[0].coeff.as_rational();
    auto p = x.terms()[0].key.power->as_rational();
    if (c && p && (*c == Rational(1) || *c == Rational(-1)) && *p == Rational(-1))
      return Ordinal::omega();
  }
  raise(Errc::UnsupportedClass, "birthday not supported for " + x.str());
}

// ---------------------------------------------------------------------------
// canonical genetic forms

GeneticForm to_genetic(const Surreal& x) {
  GeneticForm g;
  if (x.is_zero()) return g;
  if (auto r = x.as_exact_real()) {
    if (auto q = r->as_rational()) {
      if (q->is_integer()) {
        if (q->sign() > 0)
          g.left.elements.push_back(Surreal(*q - Rational(1)));
        else
          g.right.elements.push_back(Surreal(*q + Rational(1)));
        return g;
      }
      if (q->is_dyadic()) {
        // parents in the birth order: the tightest older dyadics on each side
        Rational value = *q;
        Rational x0(0);
        std::optional<Rational> lo, hi;
        while (x0 != value) {
          if (value < x0) {
            hi = x0;
            x0 = lo ? (*lo + *hi) / Rational(2) : x0 - Rational(1);
          } else {
            lo = x0;
            x0 = hi ? (*lo + *hi) / Rational(2) : x0 + Rational(1);
          }
        }
        if (lo) g.left.elements.push_back(Surreal(*lo));
        if (hi) g.right.elements.push_back(Surreal(*hi));
        return g;
      }
      // non-dyadic real: dyadic approximants from both sides, day omega
      Rational value = *q;
      g.left.family = [value](long k) {
        Rational step = Rational::pow2(-k);
        Rational approx(((value - step) / step).ceil());
        return Surreal(approx * step);
      };
      g.left.family_desc = "dyadic approximants below";
      g.right.family = [value](long k) {
        Rational step = Rational::pow2(-k);
        Rational approx(((value + step) / step).floor());
        return Surreal(approx * step);
      };
      g.right.family_desc = "dyadic approximants above";
      return g;
    }
    raise(Errc::UnsupportedClass, "no canonical genetic form for " + x.str());
  }
  if (auto o = x.as_ordinal()) {
    Ordinal a = *o;
    if (a.is_successor()) {
      g.left.elements.push_back(Surreal::from_ordinal(a.predecessor()));
      return g;
    }
    if (a == Ordinal::omega()) {
      g.left.family = [](long k) { return Surreal(Rational(k)); };
      g.left.family_desc = "positive integers";
      return g;
    }
    // fundamental sequence of a limit ordinal in CNF
    std::vector<Ordinal::Term> terms = a.terms();
    Ordinal::Term last = terms.back();
    terms.pop_back();
    Ordinal prefix = Ordinal::from_terms(terms);
    if (last.count > 1) {
      prefix = prefix + Ordinal::omega_pow(*last.expo, last.count - 1);
      last.count = 1;
    }
    Ordinal e = *last.expo;
    if (e.is_successor()) {
      Ordinal f = e.predecessor();
      g.left.family = [prefix, f](long k) {
        return Surreal::from_ordinal(prefix + Ordinal::omega_pow(f, static_cast<std::uint64_t>(k)));
      };
      g.left.family_desc = "w^" + f.str() + "*k below";
    } else {
      GeneticForm sub = to_genetic(Surreal::from_ordinal(e));
      if (!sub.left.has_family())
        raise(Errc::UnsupportedClass, "no fundamental sequence for " + e.str());
      auto ef = sub.left.family;
      g.left.family = [prefix, ef](long k) {
        auto eo = ef(k).as_ordinal();
        return Surreal::from_ordinal(prefix + Ordinal::omega_pow(*eo));
      };
      g.left.family_desc = "w^(e_k) cofinal below";
    }
    return g;
  }
  raise(Errc::UnsupportedClass, "no canonical genetic form for " + x.str());
}

// ---------------------------------------------------------------------------
// recursive Conway arithmetic, test scale

GamePtr Game::make(std::vector<GamePtr> l, std::vector<GamePtr> r) {
  auto g = std::make_shared<Game>();
  g->left = std::move(l);
  g->right = std::move(r);
  int rank = 0;
  for (const auto& o : g->left) rank = std::max(rank, o->rank + 1);
  for (const auto& o : g->right) rank = std::max(rank, o->rank + 1);
  g->rank = rank;
  return g;
}

GamePtr game_dyadic(const Rational& q) {
  // interned: canonical forms stay alive, so ops can share subgames
  static std::mutex m;
  static std::map<std::pair<mpz_class, mpz_class>, GamePtr> cache;
  std::pair<mpz_class, mpz_class> key{q.num(), q.den()};
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  if (!q.is_dyadic()) raise(Errc::UnsupportedClass, "oracle forms are dyadic-valued");
  if (q.is_zero()) {
    GamePtr g = Game::make({}, {});
    std::lock_guard<std::mutex> lock(m);
    cache[key] = g;
    return g;
  }
  Rational x(0);
  std::optional<Rational> lo, hi;
  while (x != q) {
    if (q < x) {
      hi = x;
      x = lo ? (*lo + *hi) / Rational(2) : x - Rational(1);
    } else {
      lo = x;
      x = hi ? (*lo + *hi) / Rational(2) : x + Rational(1);
    }
  }
  std::vector<GamePtr> l, r;
  if (lo) l.push_back(game_dyadic(*lo));
  if (hi) r.push_back(game_dyadic(*hi));
  GamePtr g = Game::make(std::move(l), std::move(r));
  std::lock_guard<std::mutex> lock(m);
  cache[key] = g;
  return g;
}

namespace {

struct PairHash {
  size_t operator()(const std::pair<const Game*, const Game*>& p) const {
    return std::hash<const void*>()(p.first) * 1000003u ^ std::hash<const void*>()(p.second);
  }
};

using PairKey = std::pair<const Game*, const Game*>;

bool leq_impl(const GamePtr& a, const GamePtr& b,
              std::unordered_map<PairKey, bool, PairHash>& memo) {
  PairKey key{a.get(), b.get()};
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  bool result = true;
  // a <= b iff no a^L >= b and no b^R <= a
  for (const auto& al : a->left)
    if (leq_impl(b, al, memo)) {
      result = false;
      break;
    }
  if (result)
    for (const auto& br : b->right)
      if (leq_impl(br, a, memo)) {
        result = false;
        break;
      }
  memo[key] = result;
  return result;
}

void check_rank(const GamePtr& g, int bound) {
  if (g->rank > bound)
    raise(Errc::DepthExceeded, "form exceeds the oracle birthday bound");
}

GamePtr add_impl(const GamePtr& a, const GamePtr& b,
                 std::unordered_map<PairKey, GamePtr, PairHash>& memo);

GamePtr add_pair(const GamePtr& a, const GamePtr& b,
                 std::unordered_map<PairKey, GamePtr, PairHash>& memo) {
  return add_impl(a, b, memo);
}

GamePtr add_impl(const GamePtr& a, const GamePtr& b,
                 std::unordered_map<PairKey, GamePtr, PairHash>& memo) {
  PairKey key{a.get(), b.get()};
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::vector<GamePtr> l, r;
  for (const auto& al : a->left) l.push_back(add_pair(al, b, memo));
  for (const auto& bl : b->left) l.push_back(add_pair(a, bl, memo));
  for (const auto& ar : a->right) r.push_back(add_pair(ar, b, memo));
  for (const auto& br : b->right) r.push_back(add_pair(a, br, memo));
  GamePtr g = Game::make(std::move(l), std::move(r));
  memo[key] = g;
  return g;
}

GamePtr neg_impl(const GamePtr& a, std::unordered_map<const Game*, GamePtr>& memo) {
  auto it = memo.find(a.get());
  if (it != memo.end()) return it->second;
  std::vector<GamePtr> l, r;
  for (const auto& ar : a->right) l.push_back(neg_impl(ar, memo));
  for (const auto& al : a->left) r.push_back(neg_impl(al, memo));
  GamePtr g = Game::make(std::move(l), std::move(r));
  memo[a.get()] = g;
  return g;
}

struct MulCtx {
  std::unordered_map<PairKey, GamePtr, PairHash> mul_memo;
  std::unordered_map<PairKey, GamePtr, PairHash> add_memo;
  std::unordered_map<const Game*, GamePtr> neg_memo;
};

GamePtr mul_impl(const GamePtr& a, const GamePtr& b, MulCtx& ctx) {
  PairKey key{a.get(), b.get()};
  auto it = ctx.mul_memo.find(key);
  if (it != ctx.mul_memo.end()) return it->second;
  auto part = [&](const GamePtr& xa, const GamePtr& xb) {
    // xa*b + a*xb - xa*xb
    GamePtr t1 = mul_impl(xa, b, ctx);
    GamePtr t2 = mul_impl(a, xb, ctx);
    GamePtr t3 = mul_impl(xa, xb, ctx);
    return add_impl(add_impl(t1, t2, ctx.add_memo), neg_impl(t3, ctx.neg_memo), ctx.add_memo);
  };
  std::vector<GamePtr> l, r;
  for (const auto& al : a->left)
    for (const auto& bl : b->left) l.push_back(part(al, bl));
  for (const auto& ar : a->right)
    for (const auto& br : b->right) l.push_back(part(ar, br));
  for (const auto& al : a->left)
    for (const auto& br : b->right) r.push_back(part(al, br));
  for (const auto& ar : a->right)
    for (const auto& bl : b->left) r.push_back(part(ar, bl));
  GamePtr g = Game::make(std::move(l), std::move(r));
  ctx.mul_memo[key] = g;
  return g;
}

}  // namespace

// Memo tables are per call: game node addresses are only stable while the
// operands (and their subgames) are alive.

bool game_leq(const GamePtr& a, const GamePtr& b) {
  std::unordered_map<PairKey, bool, PairHash> memo;
  return leq_impl(a, b, memo);
}

bool game_eq(const GamePtr& a, const GamePtr& b) {
  std::unordered_map<PairKey, bool, PairHash> memo;
  return leq_impl(a, b, memo) && leq_impl(b, a, memo);
}

GamePtr game_neg(const GamePtr& a) {
  std::unordered_map<const Game*, GamePtr> memo;
  return neg_impl(a, memo);
}

GamePtr game_add(const GamePtr& a, const GamePtr& b, int birthday_bound) {
  check_rank(a, birthday_bound);
  check_rank(b, birthday_bound);
  std::unordered_map<PairKey, GamePtr, PairHash> memo;
  return add_impl(a, b, memo);
}

GamePtr game_mul(const GamePtr& a, const GamePtr& b, int birthday_bound) {
  check_rank(a, birthday_bound);
  check_rank(b, birthday_bound);
  MulCtx ctx;
  return mul_impl(a, b, ctx);
}

std::vector<std::vector<Rational>> dyadics_by_day(int max_day) {
  std::vector<std::vector<Rational>> days;
  std::vector<Rational> sorted;
  days.push_back({Rational(0)});
  sorted.push_back(Rational(0));
  for (int d = 1; d <= max_day; ++d) {
    std::vector<Rational> born;
    born.push_back(sorted.front() - Rational(1));
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
      born.push_back((sorted[i] + sorted[i + 1]) / Rational(2));
    born.push_back(sorted.back() + Rational(1));
    for (const auto& q : born) sorted.push_back(q);
    std::sort(sorted.begin(), sorted.end());
    days.push_back(std::move(born));
  }
  return days;
}

}  // namespace scal
