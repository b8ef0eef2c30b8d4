#include "mcv/detline.hpp"

#include <sstream>

#include "mcv/numutil.hpp"

namespace mcv {

namespace {

IwasawaSeries one_series(const Branch& b, long M, int N) {
    IwasawaSeries s(b, M, N);
    s.set_coeff(0, PadicInt(b.p, N, 1));
    return s;
}

bool is_one_series(const IwasawaSeries& s) {
    return s == one_series(s.branch(), s.trunc(), s.precision());
}

// a truncated series is a unit iff its constant term is one; then the usual
// power-series inversion recurrence terminates at the truncation degree
IwasawaSeries inv_unit_series(const IwasawaSeries& s) {
    if (!s.coeff(0).is_unit())
        throw NotAUnit("series with constant term " + s.coeff(0).str() +
                       " is not invertible");
    const long M = s.trunc();
    const int N = s.precision();
    IwasawaSeries out(s.branch(), M, N);
    PadicInt b0 = s.coeff(0).unit_inverse();
    out.set_coeff(0, b0);
    for (long k = 1; k <= M; ++k) {
        PadicInt acc(s.p(), N);
        for (long i = 1; i <= k; ++i) acc += s.coeff(i) * out.coeff(k - i);
        out.set_coeff(k, -(b0 * acc));
    }
    return out;
}

bool series_is_unit(const IwasawaSeries& s) { return s.coeff(0).is_unit(); }

void require_same_ring(const GradedLine& a, const GradedLine& b,
                       const char* what) {
    if (a.padic_base() != b.padic_base())
        throw BaseMismatch(std::string(what) + " across base rings " +
                           a.base_str() + " and " + b.base_str());
    if (a.p() != b.p())
        throw BaseMismatch(std::string(what) + " across primes " +
                           std::to_string(a.p()) + " and " +
                           std::to_string(b.p()));
    if (!a.padic_base() &&
        a.content_series().branch().index != b.content_series().branch().index)
        throw BaseMismatch(std::string(what) + " across branches " +
                           a.base_str() + " and " + b.base_str());
}

// content ideal up to unit: for Z_p the valuation, for a series branch the
// (mu, lambda, distinguished) class with the unit part discarded
bool same_content_ideal(const GradedLine& a, const GradedLine& b) {
    if (a.padic_base())
        return a.content_zp().valuation().v == b.content_zp().valuation().v;
    return char_ideal_from_presentation({{a.content_series()}}) ==
           char_ideal_from_presentation({{b.content_series()}});
}

}  // namespace

GradedLine::GradedLine(long rank, const PadicInt& content)
    : rank_(rank), czp_(content) {
    if (content.is_zero())
        throw PrecisionInsufficient(
            "line content is indistinguishable from zero at precision " +
            std::to_string(content.precision()));
}

GradedLine::GradedLine(long rank, const IwasawaSeries& content)
    : rank_(rank), cser_(content) {
    if (content.is_zero())
        throw PrecisionInsufficient(
            "line content is indistinguishable from zero at precision " +
            std::to_string(content.precision()));
}

GradedLine GradedLine::unit(long p, int N) {
    return GradedLine(0, PadicInt(p, N, 1));
}

GradedLine GradedLine::unit(const Branch& b, long M, int N) {
    return GradedLine(0, one_series(b, M, N));
}

long GradedLine::p() const { return czp_ ? czp_->p() : cser_->p(); }

const PadicInt& GradedLine::content_zp() const {
    if (!czp_) throw BaseMismatch("p-adic content requested from " + base_str());
    return *czp_;
}

const IwasawaSeries& GradedLine::content_series() const {
    if (!cser_) throw BaseMismatch("series content requested from " + base_str());
    return *cser_;
}

bool GradedLine::is_unit_line() const {
    if (rank_ != 0) return false;
    return czp_ ? czp_->is_unit() : series_is_unit(*cser_);
}

std::string GradedLine::base_str() const {
    std::ostringstream os;
    if (czp_) {
        os << "Z_" << czp_->p() << " (N=" << czp_->precision() << ")";
    } else {
        os << "Lambda_" << cser_->p() << " branch " << cser_->branch().index
           << " (M=" << cser_->trunc() << ", N=" << cser_->precision() << ")";
    }
    return os.str();
}

std::string GradedLine::str() const {
    std::ostringstream os;
    os << "(rank " << rank_ << ", content "
       << (czp_ ? czp_->str() : cser_->str()) << ") over " << base_str();
    return os.str();
}

bool same_line(const GradedLine& a, const GradedLine& b) {
    require_same_ring(a, b, "line comparison");
    if (a.rank() != b.rank()) return false;
    return same_content_ideal(a, b);
}

GradedLine tensor(const GradedLine& a, const GradedLine& b) {
    require_same_ring(a, b, "tensor");
    const long r = a.rank() + b.rank();

    if (a.padic_base()) {
        // net ideal exponent with the rank-sign convention; the stored
        // generator must carry that exponent with the sign of the new rank
        PadicInt num(a.p(), std::min(a.content_zp().precision(),
                                     b.content_zp().precision()),
                     1);
        PadicInt den = num;
        (a.rank() >= 0 ? num : den) *= a.content_zp();
        (b.rank() >= 0 ? num : den) *= b.content_zp();
        if (num.is_zero() || den.is_zero())
            throw PrecisionInsufficient(
                "tensor content product vanished at working precision");
        const long e = num.valuation().v - den.valuation().v;
        if ((e > 0 && r < 0) || (e < 0 && r >= 0))
            throw FractionalContent(
                "tensor content is p^(" + std::to_string(e) + ") at rank " +
                std::to_string(r) + "; no integral generator represents it");
        return GradedLine(r, e >= 0 ? padic_ratio(num, den)
                                    : padic_ratio(den, num));
    }

    const IwasawaSeries& ca = a.content_series();
    const IwasawaSeries& cb = b.content_series();
    IwasawaSeries num = one_series(ca.branch(), std::min(ca.trunc(), cb.trunc()),
                                   std::min(ca.precision(), cb.precision()));
    IwasawaSeries den = num;
    (a.rank() >= 0 ? num : den) = (a.rank() >= 0 ? num : den) * ca;
    (b.rank() >= 0 ? num : den) = (b.rank() >= 0 ? num : den) * cb;
    if (num.is_zero() || den.is_zero())
        throw PrecisionInsufficient(
            "tensor content product vanished at working precision");

    // orient the quotient by the sign of the new rank, then divide exactly:
    // trivial denominator, exact cancellation, or inversion of a unit series
    const IwasawaSeries& top = (r >= 0) ? num : den;
    const IwasawaSeries& bot = (r >= 0) ? den : num;
    if (is_one_series(bot)) return GradedLine(r, top);
    if (top == bot)
        return GradedLine(r, one_series(top.branch(),
                                        std::min(top.trunc(), bot.trunc()),
                                        std::min(top.precision(),
                                                 bot.precision())));
    if (series_is_unit(bot)) return GradedLine(r, top * inv_unit_series(bot));
    throw FractionalContent(
        "tensor content " + num.str() + " / " + den.str() + " at rank " +
        std::to_string(r) +
        "; series division is only supported for exact cancellation or a "
        "unit denominator");
}

BaseUnit::BaseUnit(const PadicInt& u) : zp(u) {
    if (!u.is_unit())
        throw NotAUnit("base-ring unit expected, got " + u.str());
}

BaseUnit::BaseUnit(const IwasawaSeries& u) : series(u) {
    if (!series_is_unit(u))
        throw NotAUnit("base-ring unit expected, got series " + u.str());
}

bool BaseUnit::is_one() const {
    if (zp) return *zp == PadicInt(zp->p(), zp->precision(), 1);
    return is_one_series(*series);
}

std::string BaseUnit::str() const { return zp ? zp->str() : series->str(); }

BaseUnit operator*(const BaseUnit& a, const BaseUnit& b) {
    if (a.zp.has_value() != b.zp.has_value())
        throw BaseMismatch("product of units of different base rings");
    if (a.zp) return BaseUnit(*a.zp * *b.zp);
    return BaseUnit(*a.series * *b.series);
}

bool operator==(const BaseUnit& a, const BaseUnit& b) {
    if (a.zp.has_value() != b.zp.has_value()) return false;
    return a.zp ? (*a.zp == *b.zp) : (*a.series == *b.series);
}

Generator::Generator(const GradedLine& line) : line_(line) {
    if (line_.padic_base())
        uzp_ = PadicInt(line_.p(), line_.content_zp().precision(), 1);
    else
        user_ = one_series(line_.content_series().branch(),
                           line_.content_series().trunc(),
                           line_.content_series().precision());
}

Generator::Generator(const GradedLine& line, const PadicInt& u)
    : line_(line), uzp_(u) {
    if (!line_.padic_base())
        throw BaseMismatch("p-adic scaling unit for a line over " +
                           line_.base_str());
    if (u.p() != line_.p())
        throw BaseMismatch("scaling unit over Z_" + std::to_string(u.p()) +
                           " for a line over " + line_.base_str());
    if (!u.is_unit())
        throw NotAUnit("generator scaling " + u.str() + " is not a unit");
}

Generator::Generator(const GradedLine& line, const IwasawaSeries& u)
    : line_(line), user_(u) {
    if (line_.padic_base())
        throw BaseMismatch("series scaling unit for a line over " +
                           line_.base_str());
    if (u.p() != line_.p() ||
        u.branch().index != line_.content_series().branch().index)
        throw BaseMismatch("scaling unit on the wrong branch for a line over " +
                           line_.base_str());
    if (!series_is_unit(u))
        throw NotAUnit("generator scaling " + u.str() + " is not a unit");
}

const PadicInt& Generator::unit_zp() const {
    if (!uzp_)
        throw BaseMismatch("p-adic unit requested from a series-line generator");
    return *uzp_;
}

const IwasawaSeries& Generator::unit_series() const {
    if (!user_)
        throw BaseMismatch("series unit requested from a p-adic-line generator");
    return *user_;
}

Generator Generator::scaled(const PadicInt& u) const {
    return Generator(line_, unit_zp() * u);
}

Generator Generator::scaled(const IwasawaSeries& u) const {
    return Generator(line_, unit_series() * u);
}

std::string Generator::str() const {
    return (uzp_ ? uzp_->str() : user_->str()) + " * " + line_.str();
}

Generator tensor(const Generator& a, const Generator& b) {
    GradedLine line = tensor(a.line(), b.line());
    if (line.padic_base()) {
        PadicInt ua = a.unit_zp(), ub = b.unit_zp();
        if (a.line().rank() < 0) ua = ua.unit_inverse();
        if (b.line().rank() < 0) ub = ub.unit_inverse();
        return Generator(line, ua * ub);
    }
    IwasawaSeries ua = a.unit_series(), ub = b.unit_series();
    if (a.line().rank() < 0) ua = inv_unit_series(ua);
    if (b.line().rank() < 0) ub = inv_unit_series(ub);
    return Generator(line, ua * ub);
}

BaseUnit generator_ratio(const Generator& z1, const Generator& z2) {
    if (!same_line(z1.line(), z2.line()))
        throw LineMismatch("generator ratio of " + z1.line().str() + " and " +
                           z2.line().str());

    if (z1.line().padic_base()) {
        // ratio of the full elements u*c; the contents have equal valuation,
        // so the quotient is exact and a unit
        return BaseUnit(
            padic_ratio(z1.unit_zp() * z1.line().content_zp(),
                        z2.unit_zp() * z2.line().content_zp()));
    }

    const IwasawaSeries& c1 = z1.line().content_series();
    const IwasawaSeries& c2 = z2.line().content_series();
    if (c1 == c2)  // common case: same stored representative
        return BaseUnit(z1.unit_series() *
                        inv_unit_series(z2.unit_series()));
    // same ideal, different representatives: cancel the shared p^mu * P
    // through the Weierstrass unit parts, which quotient to exactly the
    // representative-change unit over the certified window
    WeierstrassData w1 = weierstrass(c1);
    WeierstrassData w2 = weierstrass(c2);
    return BaseUnit((z1.unit_series() * w1.unit) *
                    inv_unit_series(z2.unit_series() * w2.unit));
}

Generator det_finite_module(long p, const std::vector<long>& lengths, int N) {
    long total = 0;
    for (long a : lengths) {
        if (a < 0)
            throw error("cyclic factor length " + std::to_string(a) +
                        " is negative");
        total += a;
    }
    if (N <= total)
        throw PrecisionInsufficient(
            "module of total length " + std::to_string(total) +
            " needs precision > " + std::to_string(total) +
            " to keep its determinant content away from zero");
    PadicInt content(p, N, pow_int(Int(p), static_cast<unsigned long>(total)));
    return Generator(GradedLine(0, content));
}

}  // namespace mcv
