#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcv/iwasawa.hpp"

namespace mcv {

/* graded determinant line over a commutative local base ring: the pair
   (invertible module, integer rank), with the invertible module recorded by
   a single generator of its content ideal.  two bases occur: Z_p at working
   precision N, and an omega-branch of the Iwasawa algebra truncated to
   (p^N, T^(M+1)).  over a local ring every invertible module is free of
   rank one, so the generator is the whole datum, up to a unit.

   sign convention: a line of negative rank stores the generator of the
   INVERSE of its content ideal.  that is the only way the dual of an
   integral line stays representable by one ring element, and it makes
   (rank 1, f) tensor (rank -1, f) collapse to the unit line. */
class GradedLine {
public:
    GradedLine(long rank, const PadicInt& content);
    GradedLine(long rank, const IwasawaSeries& content);

    // the unit line (A, 0): rank 0, content 1
    static GradedLine unit(long p, int N);
    static GradedLine unit(const Branch& b, long M, int N);

    bool padic_base() const { return czp_.has_value(); }
    long rank() const { return rank_; }
    long p() const;

    const PadicInt& content_zp() const;           // BaseMismatch on a series line
    const IwasawaSeries& content_series() const;  // BaseMismatch on a p-adic line

    // rank 0 and content a unit, i.e. content ideal (1)
    bool is_unit_line() const;

    std::string base_str() const;
    std::string str() const;

private:
    long rank_ = 0;
    std::optional<PadicInt> czp_;
    std::optional<IwasawaSeries> cser_;
};

/* line equality: same base ring, same rank, and the contents generate the
   same ideal (generators are compared up to a unit, not as stored
   representatives).  comparing lines over different base rings is
   meaningless and throws BaseMismatch. */
bool same_line(const GradedLine& a, const GradedLine& b);
inline bool operator==(const GradedLine& a, const GradedLine& b) {
    return same_line(a, b);
}

/* tensor product: ranks add, content ideals multiply in the fractional
   ideal group (a negative-rank factor contributes its content inversely).
   the result must again carry a single integral generator -- a genuinely
   fractional net content has no such representative and raises
   FractionalContent.  cancellation against a non-unit series denominator
   is supported only when the factors cancel exactly. */
GradedLine tensor(const GradedLine& a, const GradedLine& b);

/* unit of the base ring, as produced by generator_ratio; exactly one slot
   is engaged, matching the line's base.  construction rejects non-units. */
struct BaseUnit {
    std::optional<PadicInt> zp;
    std::optional<IwasawaSeries> series;

    explicit BaseUnit(const PadicInt& u);
    explicit BaseUnit(const IwasawaSeries& u);

    bool is_one() const;
    std::string str() const;
};

BaseUnit operator*(const BaseUnit& a, const BaseUnit& b);
bool operator==(const BaseUnit& a, const BaseUnit& b);

/* generator of a graded line: the stored content generator rescaled by a
   unit u of the base ring.  the generators of one line form a torsor under
   the unit group; two of them differ by the unique unit that
   generator_ratio recovers. */
class Generator {
public:
    explicit Generator(const GradedLine& line);  // u = 1, the distinguished choice
    Generator(const GradedLine& line, const PadicInt& u);
    Generator(const GradedLine& line, const IwasawaSeries& u);

    const GradedLine& line() const { return line_; }
    const PadicInt& unit_zp() const;
    const IwasawaSeries& unit_series() const;

    Generator scaled(const PadicInt& u) const;
    Generator scaled(const IwasawaSeries& u) const;

    std::string str() const;

private:
    GradedLine line_;
    std::optional<PadicInt> uzp_;
    std::optional<IwasawaSeries> user_;
};

// tensor of generators: lines tensor, scaling units multiply (inversely for
// a negative-rank factor, matching the line sign convention)
Generator tensor(const Generator& a, const Generator& b);

/* the unique unit u with z1 = u * z2, computed from the full generator
   elements so that z1 and z2 may sit on different (unit-equivalent) stored
   representatives of the same line.  LineMismatch if the lines differ. */
BaseUnit generator_ratio(const Generator& z1, const Generator& z2);

/* determinant of the finite module  (+) Z/p^{a_i}: the rank-0 line with
   content p^{sum a_i}, together with its distinguished generator.
   multiplicative in direct sums (concatenation of length multisets).
   needs N > sum a_i, else the content is indistinguishable from zero. */
Generator det_finite_module(long p, const std::vector<long>& lengths, int N);

}  // namespace mcv
