#include <gtest/gtest.h>

#include "bsn/group.hpp"
#include "bsn/io.hpp"
#include "support.hpp"

using namespace bsn;
using namespace bsn::testing;

namespace {

// Some m with gen^m == g, searched over |m| <= 64.
std::optional<std::int64_t> power_of(const BsElem& gen, const BsElem& g) {
  for (std::int64_t m = -64; m <= 64; ++m) {
    if (bs_pow(gen, m) == g) return m;
  }
  return std::nullopt;
}

}  // namespace

TEST(Group, Law) {
  auto b2 = make_base(2);
  EXPECT_EQ(bs_from_word("t a T", b2), el(1, 2, 0, b2));
  EXPECT_EQ(bs_from_word("", b2), bs_identity(b2));
  EXPECT_EQ(el(1, 1, b2) * el(1, 1, b2), el(3, 2, b2));
  EXPECT_EQ(bs_inv(el(1, 1, b2)), el(-1, 2, -1, b2));
  for (std::int64_t n : {2, 3, 6, 30}) {
    auto base = make_base(n);
    EXPECT_EQ(bs_from_word("T a t", base), bs_pow(bs_a(base), n));
    EXPECT_EQ(bs_from_word("a^3 a^-3 t^0", base), bs_identity(base));
  }
}

TEST(Group, Properties) {
  Gen gen(3);
  for (std::int64_t n : {2, 3, 4, 6, 10, 12, 30}) {
    auto base = make_base(n);
    for (int i = 0; i < 60; ++i) {
      BsElem g = gen.elem(base, 6), h = gen.elem(base, 6), k = gen.elem(base, 6);
      EXPECT_EQ((g * h) * k, g * (h * k));
      EXPECT_EQ(g * bs_inv(g), bs_identity(base));
      EXPECT_EQ(bs_inv(g) * g, bs_identity(base));
      EXPECT_EQ(bs_to_matrix(g * h), bs_to_matrix(g) * bs_to_matrix(h));
      BsElem acc = bs_identity(base);
      for (std::int64_t m = 0; m <= 6; ++m) {
        EXPECT_EQ(bs_pow(g, m), acc);
        EXPECT_EQ(bs_pow(g, -m), bs_inv(acc));
        acc = acc * g;
      }
      EXPECT_EQ(parse_elem(to_string(g), base), g);
    }
  }
}

TEST(Group, WordParser) {
  auto words = parse_word(" a^2  T A^-1 t^+3");
  ASSERT_EQ(words.size(), 4u);
  EXPECT_EQ(words[0].exponent, 2);
  EXPECT_EQ(words[1].generator, 't');
  EXPECT_EQ(words[1].exponent, -1);
  EXPECT_EQ(words[2].exponent, 1);
  EXPECT_EQ(words[3].exponent, 3);
  try {
    parse_word("a b");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
    EXPECT_EQ(e.token(), "b");
  }
  EXPECT_THROW(parse_word("a^"), ParseError);
  EXPECT_THROW(parse_word("a^99999999999999999999"), ParseError);
}

TEST(Group, ElementLiterals) {
  auto b2 = make_base(2);
  EXPECT_EQ(parse_elem("(-3/4; -2)", b2), el(-3, 4, -2, b2));
  EXPECT_EQ(to_string(el(-3, 4, -2, b2)), "(-3/4; -2)");
  EXPECT_THROW(parse_elem("(1; 2", b2), ParseError);
  EXPECT_THROW(parse_elem("(1, 2)", b2), ParseError);
  EXPECT_THROW(parse_elem("(1; 2) x", b2), ParseError);
  EXPECT_THROW(parse_elem("(1/3; 2)", b2), ParseError);
}

TEST(Group, Roots) {
  auto b2 = make_base(2);
  EXPECT_EQ(bs_kth_root(el(3, 2, b2), 2), el(1, 1, b2));
  EXPECT_FALSE(bs_kth_root(el(1, 2, b2), 2).has_value());
  EXPECT_FALSE(bs_kth_root(el(1, 1, b2), 2).has_value());
  auto [h, m] = bs_root_closure(el(3, 2, b2));
  EXPECT_EQ(h, el(1, 1, b2));
  EXPECT_EQ(m, 2);

  Gen gen(4);
  for (std::int64_t n : {2, 3, 6, 10}) {
    auto base = make_base(n);
    for (int i = 0; i < 80; ++i) {
      BsElem g = gen.elem(base, 5);
      const std::int64_t k = gen.range(1, 5);
      EXPECT_EQ(bs_kth_root(bs_pow(g, k), k), g);
      if (g.c == 0) continue;
      auto [root, power] = bs_root_closure(g);
      EXPECT_EQ(bs_pow(root, power), g);
      // Maximality: no proper root of the root.
      for (std::int64_t e = 2; e <= 2 * (root.c < 0 ? -root.c : root.c); ++e) {
        EXPECT_FALSE(bs_kth_root(root, e).has_value());
      }
    }
  }
}

TEST(Group, Classify) {
  auto b2 = make_base(2);
  auto cyc = [](const SubgroupClass& s) { return std::get<CyclicSubgroup>(s).generator; };
  EXPECT_EQ(cyc(classify_subgroup({el(1, 1, b2)})), el(1, 1, b2));
  EXPECT_EQ(cyc(classify_subgroup({el(1, 0, b2), el(1, 2, 0, b2)})), el(1, 2, 0, b2));
  EXPECT_EQ(cyc(classify_subgroup({el(3, 2, b2), el(1, 1, b2)})), el(1, 1, b2));
  EXPECT_TRUE(std::holds_alternative<FiniteIndexSubgroup>(
      classify_subgroup({el(0, 1, b2), el(1, 0, b2)})));
  EXPECT_EQ(cyc(classify_subgroup({bs_identity(b2)})), bs_identity(b2));
  EXPECT_THROW(classify_subgroup({}), Error);

  Gen gen(5);
  for (std::int64_t n : {2, 3, 6}) {
    auto base = make_base(n);
    for (int i = 0; i < 60; ++i) {
      BsElem h = gen.elem(base, 4);
      std::vector<BsElem> gens;
      const std::int64_t count = gen.range(1, 3);
      for (std::int64_t j = 0; j < count; ++j) gens.push_back(bs_pow(h, gen.range(-3, 3)));
      if (gen.range(0, 3) == 0) gens.push_back(gen.elem(base, 4));
      const SubgroupClass cls = classify_subgroup(gens);
      if (const auto* c = std::get_if<CyclicSubgroup>(&cls)) {
        for (const BsElem& g : gens) {
          EXPECT_TRUE(power_of(c->generator, g).has_value())
              << to_string(g) << " not in <" << to_string(c->generator) << ">";
        }
      } else {
        const auto& f = std::get<FiniteIndexSubgroup>(cls);
        EXPECT_NE(f.t_part.c, 0);
        EXPECT_EQ(f.kernel_gen.c, 0);
        EXPECT_FALSE(f.kernel_gen.is_identity());
      }
    }
  }
}

TEST(Group, AdditiveGcd) {
  auto b2 = make_base(2);
  EXPECT_EQ(additive_gcd({zq(1, 1, b2), zq(1, 2, b2)}, b2), zq(1, 2, b2));
  EXPECT_EQ(additive_gcd({zq(6, 1, b2), zq(-9, 4, b2)}, b2), zq(3, 4, b2));
  EXPECT_TRUE(additive_gcd({ZnElem(b2)}, b2).is_zero());
}
