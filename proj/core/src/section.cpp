#include "scal/section.hpp"

#include "scal/errors.hpp"
#include "scal/limits.hpp"

namespace scal {

const char* gap_tag_name(GapTag t) {
  switch (t) {
    case GapTag::NotAGap: return "NotAGap";
    case GapTag::TypeIa: return "TypeIa";
    case GapTag::TypeIb: return "TypeIb";
    case GapTag::TypeII: return "TypeII";
  }
  return "?";
}

DedekindSection DedekindSection::number(Surreal v) {
  DedekindSection s;
  s.kind_ = Kind::Number;
  s.value_ = std::move(v);
  return s;
}

DedekindSection DedekindSection::type1(SurrealStream st) {
  DedekindSection s;
  s.kind_ = Kind::TypeI;
  s.stream_ = std::make_shared<SurrealStream>(std::move(st));
  return s;
}

DedekindSection DedekindSection::type2(SurrealValue prefix, int sign, DedekindSection theta) {
  DedekindSection s;
  s.kind_ = Kind::TypeII;
  s.prefix_ = std::make_shared<SurrealValue>(std::move(prefix));
  s.sign_ = sign >= 0 ? 1 : -1;
  s.theta_ = std::make_shared<DedekindSection>(std::move(theta));
  return s;
}

DedekindSection DedekindSection::on() {
  DedekindSection s;
  s.kind_ = Kind::On;
  return s;
}

DedekindSection DedekindSection::off() {
  DedekindSection s;
  s.kind_ = Kind::Off;
  return s;
}

DedekindSection DedekindSection::infty() {
  DedekindSection s;
  s.kind_ = Kind::Infty;
  return s;
}

DedekindSection DedekindSection::cut(Surreal v, bool below) {
  DedekindSection s;
  s.kind_ = Kind::Cut;
  s.value_ = std::move(v);
  s.cut_below_ = below;
  return s;
}

const Surreal& DedekindSection::number_value() const {
  if (kind_ != Kind::Number && kind_ != Kind::Cut)
    raise(Errc::Internal, "not a number section");
  return value_;
}

const SurrealStream& DedekindSection::stream() const {
  if (kind_ != Kind::TypeI) raise(Errc::Internal, "not Type I data");
  return *stream_;
}

const SurrealValue& DedekindSection::prefix() const {
  if (kind_ != Kind::TypeII) raise(Errc::Internal, "not Type II data");
  return *prefix_;
}

const DedekindSection& DedekindSection::theta() const {
  if (kind_ != Kind::TypeII) raise(Errc::Internal, "not Type II data");
  return *theta_;
}

bool DedekindSection::identical(const DedekindSection& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::On:
    case Kind::Off:
    case Kind::Infty: return true;
    case Kind::Number: return value_.identical(o.value_);
    case Kind::Cut: return cut_below_ == o.cut_below_ && value_.identical(o.value_);
    case Kind::TypeI: return SurrealStream::identical(*stream_, *o.stream_);
    case Kind::TypeII: {
      if (sign_ != o.sign_) return false;
      if (!theta_->identical(*o.theta_)) return false;
      if (std::holds_alternative<Surreal>(*prefix_) !=
          std::holds_alternative<Surreal>(*o.prefix_))
        return false;
      if (std::holds_alternative<Surreal>(*prefix_))
        return std::get<Surreal>(*prefix_).identical(std::get<Surreal>(*o.prefix_));
      return SurrealStream::identical(std::get<SurrealStream>(*prefix_),
                                      std::get<SurrealStream>(*o.prefix_));
    }
  }
  return false;
}

std::string DedekindSection::str() const {
  switch (kind_) {
    case Kind::On: return "ON";
    case Kind::Off: return "OFF";
    case Kind::Infty: return "INFTY";
    case Kind::Number: return value_.str();
    case Kind::Cut:
      return "cut{" + value_.str() + (cut_below_ ? "-" : "+") + "}";
    case Kind::TypeI: {
      std::string body = stream_->truncate(8).str() + " + ... ; " + stream_->rule_str();
      if (!stream_->tail_pending().empty())
        body += " (+ lower-order " + Surreal::normalize(stream_->tail_pending()).str() + ")";
      return "gap{ " + body + " }";
    }
    case Kind::TypeII: {
      std::string p;
      if (std::holds_alternative<Surreal>(*prefix_)) {
        const Surreal& v = std::get<Surreal>(*prefix_);
        if (!v.is_zero()) p = v.str() + " ";
      } else {
        p = std::get<SurrealStream>(*prefix_).rule_str() + " ";
      }
      return "gap{ " + p + (sign_ > 0 ? "+" : "-") + " w^Theta{" + theta_->str() + "} }";
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// side queries

namespace {

// side of the exponent z relative to theta, for deciding x vs w^Theta
int theta_side(const DedekindSection& theta, const Surreal& z, long budget);
int theta_side_public(const DedekindSection& theta, const Surreal& z);

int side_type2(const DedekindSection& s, const Surreal& x, long budget) {
  if (!std::holds_alternative<Surreal>(s.prefix()))
    raise(Errc::WitnessExhausted, "stream-prefix Type II side query unsupported");
  const Surreal& p = std::get<Surreal>(s.prefix());
  Surreal d = x - p;
  if (d.is_zero()) return s.sign() > 0 ? -1 : 1;
  int ds = d.sign();
  if (s.sign() > 0) {
    // x against prefix + w^Theta
    if (ds < 0) return -1;
    if (d.has_exp_atom()) return 1;  // atoms dominate every w-power scale
    const Surreal& z = *d.terms()[0].key.power;
    return theta_side(s.theta(), z, budget) < 0 ? -1 : 1;
  }
  // x against prefix - w^Theta
  if (ds > 0) return 1;
  if (d.has_exp_atom()) return -1;
  const Surreal& z = *d.terms()[0].key.power;
  return theta_side(s.theta(), z, budget) < 0 ? 1 : -1;
}

int side_type1(const DedekindSection& s, const Surreal& x, long budget) {
  // walk x's terms against the stream's terms; first difference decides
  SurrealValue sv = s.stream();
  SurrealValue xv = x;
  return value_compare(xv, sv, budget);
}

int theta_side(const DedekindSection& theta, const Surreal& z, long budget) {
  switch (theta.kind()) {
    case DedekindSection::Kind::On: return -1;
    case DedekindSection::Kind::Off: return 1;
    case DedekindSection::Kind::Cut: {
      int c = Surreal::compare(z, theta.number_value());
      if (theta.cut_below()) return c < 0 ? -1 : 1;
      return c <= 0 ? -1 : 1;
    }
    case DedekindSection::Kind::Number: {
      int c = Surreal::compare(z, theta.number_value());
      if (c == 0)
        raise(Errc::IllFormed, "theta must be a section, not a bare number");
      return c;
    }
    case DedekindSection::Kind::Infty: {
      if (z.sign() <= 0) return -1;
      return z.terms()[0].key.power->sign() > 0 ? 1 : -1;
    }
    case DedekindSection::Kind::TypeI: return side_type1(theta, z, budget);
    case DedekindSection::Kind::TypeII: return side_type2(theta, z, budget);
  }
  raise(Errc::Internal, "bad theta");
}

}  // namespace

int section_side(const DedekindSection& s, const Surreal& x, long witness_budget) {
  switch (s.kind()) {
    case DedekindSection::Kind::Number:
    case DedekindSection::Kind::Cut: {
      int c = Surreal::compare(x, s.number_value());
      if (s.kind() == DedekindSection::Kind::Number) return c;
      if (s.cut_below()) return c < 0 ? -1 : 1;
      return c <= 0 ? -1 : 1;
    }
    case DedekindSection::Kind::On: return -1;
    case DedekindSection::Kind::Off: return 1;
    case DedekindSection::Kind::Infty: {
      if (x.sign() <= 0) return -1;
      if (x.has_exp_atom())
        return x.terms()[0].key.atom_arg->sign() > 0 ? 1 : -1;
      return x.terms()[0].key.power->sign() > 0 ? 1 : -1;
    }
    case DedekindSection::Kind::TypeI: return side_type1(s, x, witness_budget);
    case DedekindSection::Kind::TypeII: return side_type2(s, x, witness_budget);
  }
  raise(Errc::Internal, "bad section");
}

// ---------------------------------------------------------------------------
// validation, classification, arithmetic

namespace {

int theta_side_public(const DedekindSection& theta, const Surreal& z) {
  return theta_side(theta, z, 64);
}

}  // namespace

DedekindSection validate_section(const DedekindSection& s) {
  switch (s.kind()) {
    case DedekindSection::Kind::Number:
    case DedekindSection::Kind::On:
    case DedekindSection::Kind::Off:
    case DedekindSection::Kind::Infty:
      return s;
    case DedekindSection::Kind::Cut:
      // {No_<x | No_>=x} and {No_<=x | No_>x} are defined to equal x
      return DedekindSection::number(s.number_value());
    case DedekindSection::Kind::TypeI: {
      if (!s.stream().is_on_length())
        raise(Errc::IllFormed, "Type I gap data needs an On-length stream");
      if (s.stream().is_native())
        raise(Errc::IllFormed, "Type I gap data needs closed-form rules");
      s.stream().validate_window();
      return s;
    }
    case DedekindSection::Kind::TypeII: {
      const DedekindSection& th = s.theta();
      if (th.kind() == DedekindSection::Kind::Number)
        raise(Errc::IllFormed, "theta must be a section, not a bare number");
      if (th.kind() == DedekindSection::Kind::Off) {
        // w^Off = 1/On is excluded by the gap restriction
        if (!std::holds_alternative<Surreal>(s.prefix()))
          raise(Errc::IllFormed, "pseudo-gap with a stream prefix");
        return DedekindSection::number(std::get<Surreal>(s.prefix()));
      }
      if (th.kind() == DedekindSection::Kind::On)
        return s.sign() > 0 ? DedekindSection::on() : DedekindSection::off();
      if (th.kind() == DedekindSection::Kind::TypeII ||
          th.kind() == DedekindSection::Kind::TypeI ||
          th.kind() == DedekindSection::Kind::Cut ||
          th.kind() == DedekindSection::Kind::Infty) {
        // side condition: every prefix exponent lies in theta's right class
        if (std::holds_alternative<Surreal>(s.prefix())) {
          for (const auto& t : std::get<Surreal>(s.prefix()).terms()) {
            if (t.key.has_atom()) raise(Errc::IllFormed, "exp atom in a gap prefix");
            if (theta_side_public(th, *t.key.power) <= 0)
              raise(Errc::IllFormed,
                    "prefix exponent " + t.key.power->str() +
                        " is not above theta");
          }
        }
        // w^(0+ cut) with an empty prefix is the finite/infinite gap
        if (th.kind() == DedekindSection::Kind::Cut && !th.cut_below() &&
            th.number_value().is_zero() && s.sign() > 0 &&
            std::holds_alternative<Surreal>(s.prefix()) &&
            std::get<Surreal>(s.prefix()).is_zero())
          return DedekindSection::infty();
        return s;
      }
      raise(Errc::IllFormed, "unsupported theta kind");
    }
  }
  raise(Errc::Internal, "bad section");
}

GapTag classify_gap(const DedekindSection& s) {
  switch (s.kind()) {
    case DedekindSection::Kind::Number:
    case DedekindSection::Kind::Cut:
      return GapTag::NotAGap;
    case DedekindSection::Kind::On:
    case DedekindSection::Kind::Off:
    case DedekindSection::Kind::Infty:
    case DedekindSection::Kind::TypeII:
      return GapTag::TypeII;
    case DedekindSection::Kind::TypeI: {
      if (s.stream().is_native())
        raise(Errc::UndecidableAsymptotics, "no closed-form exponent rule");
      // Ia iff the exponents tend to Off
      LimitResult lr;
      try {
        lr = seq_limit(s.stream().expo_rule(), "i");
      } catch (const CalcError& e) {
        raise(Errc::UndecidableAsymptotics,
              std::string("exponent rule outside the asymptotic class: ") + e.what());
      }
      if (lr.tag == LimitResult::Tag::Gap &&
          lr.gap->kind() == DedekindSection::Kind::Off)
        return GapTag::TypeIa;
      if (lr.tag == LimitResult::Tag::NoLimit)
        raise(Errc::UndecidableAsymptotics, "exponent rule has no limit");
      return GapTag::TypeIb;
    }
  }
  raise(Errc::Internal, "bad section");
}

DedekindSection gap_plus_number(const Surreal& n, const DedekindSection& g, long window) {
  if (!g.is_gap()) raise(Errc::DomainError, "gap_plus_number needs a gap");
  if (n.is_zero()) return g;
  switch (g.kind()) {
    case DedekindSection::Kind::On:
    case DedekindSection::Kind::Off:
      return g;  // On and Off absorb every number
    case DedekindSection::Kind::Infty: {
      // finite translations leave the finite/infinite cut alone
      Surreal inf, small;
      ExactReal real;
      n.split(inf, real, small);
      if (inf.is_zero()) return g;
      return DedekindSection::type2(n, 1,
                                    DedekindSection::cut(Surreal(0), false));
    }
    case DedekindSection::Kind::TypeI: {
      return DedekindSection::type1(g.stream().plus_number(n, window));
    }
    case DedekindSection::Kind::TypeII: {
      if (!std::holds_alternative<Surreal>(g.prefix()))
        raise(Errc::UnsupportedClass, "stream-prefix translation unsupported");
      Surreal p = std::get<Surreal>(g.prefix());
      // terms below the w^Theta scale are absorbed by the gap
      std::vector<Surreal::Term> kept;
      for (const auto& t : n.terms()) {
        if (t.key.has_atom()) raise(Errc::UnsupportedClass, "exp atom added to a gap");
        if (theta_side_public(g.theta(), *t.key.power) > 0) kept.push_back(t);
      }
      return DedekindSection::type2(p + Surreal::normalize(kept), g.sign(), g.theta());
    }
    default:
      raise(Errc::Internal, "bad gap");
  }
}

DedekindSection omega_power_gap(const DedekindSection& theta) {
  switch (theta.kind()) {
    case DedekindSection::Kind::Number:
      raise(Errc::IllFormed, "theta must be a section, not a bare number");
    case DedekindSection::Kind::Off:
      // w^Off = 1/On is not a gap under the restriction
      return DedekindSection::number(Surreal(0));
    default:
      return validate_section(
          DedekindSection::type2(Surreal(0), 1, theta));
  }
}

}  // namespace scal
