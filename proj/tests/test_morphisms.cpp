#include <gtest/gtest.h>

#include "bsn/io.hpp"
#include "bsn/morphisms.hpp"
#include "support.hpp"

using namespace bsn;
using namespace bsn::testing;

TEST(Morphisms, GeneratorImages) {
  auto b2 = make_base(2);
  const Morphism f = aff(3, -1, b2);
  EXPECT_EQ(bsn::apply(f, bs_a(b2)), el(3, 0, b2));
  EXPECT_EQ(bsn::apply(f, bs_t(b2)), el(-1, 1, b2));
  const Morphism g = TypeII{el(5, 2, b2)};
  EXPECT_EQ(bsn::apply(g, bs_a(b2)), bs_identity(b2));
  EXPECT_EQ(bsn::apply(g, bs_t(b2)), el(5, 2, b2));
  EXPECT_THROW(AffinePair(ZnElem(b2), zq(1, 1, b2)), Error);
}

TEST(Morphisms, HomomorphismAndComposition) {
  Gen gen(6);
  for (std::int64_t n : {2, 3, 6, 10}) {
    auto base = make_base(n);
    for (int i = 0; i < 80; ++i) {
      const Morphism f = gen.any_morphism(base), h = gen.any_morphism(base);
      const BsElem x = gen.elem(base, 5), y = gen.elem(base, 5);
      EXPECT_EQ(bsn::apply(f, x * y), bsn::apply(f, x) * bsn::apply(f, y)) << to_string(f);
      EXPECT_EQ(bsn::apply(compose(f, h), x), bsn::apply(f, bsn::apply(h, x)))
          << to_string(f) << " o " << to_string(h);
      // k-fold composite against iterated application.
      Morphism acc = identity_morphism(base);
      for (std::int64_t k = 0; k <= 4; ++k) {
        EXPECT_EQ(morph_pow(f, k), acc) << to_string(f) << "^" << k;
        acc = compose(f, acc);
      }
      EXPECT_EQ(parse_morphism(to_string(f), base), f);
    }
  }
}

TEST(Morphisms, Automorphisms) {
  Gen gen(7);
  for (std::int64_t n : {2, 6, 30}) {
    auto base = make_base(n);
    for (int i = 0; i < 60; ++i) {
      const Morphism f = AffinePair(gen.unit(base), gen.zn(base));
      ASSERT_TRUE(is_automorphism(f));
      const Morphism inv = aut_inverse(f);
      EXPECT_TRUE(is_identity(compose(f, inv)));
      EXPECT_TRUE(is_identity(compose(inv, f)));
      EXPECT_EQ(morph_pow(f, -3), morph_pow(inv, 3));
    }
  }
  auto b2 = make_base(2);
  EXPECT_THROW(aut_inverse(aff(3, 1, b2)), Error);
  EXPECT_THROW(morph_pow(Morphism(TypeII{el(1, 1, b2)}), -1), Error);
}

TEST(Morphisms, Inner) {
  Gen gen(8);
  for (std::int64_t n : {2, 3, 6}) {
    auto base = make_base(n);
    for (int i = 0; i < 60; ++i) {
      const BsElem g = gen.elem(base, 5), x = gen.elem(base, 5);
      EXPECT_EQ(bsn::apply(inner(g), x), g * x * bs_inv(g));
    }
  }
}

TEST(Morphisms, Literals) {
  auto b2 = make_base(2);
  EXPECT_EQ(parse_morphism("[2; -1]", b2), Morphism(aff(2, -1, b2)));
  EXPECT_EQ(parse_morphism("<<1; 2>>", b2), Morphism(TypeII{el(1, 2, b2)}));
  EXPECT_EQ(to_string(Morphism(aff(2, -1, b2))), "[2; -1]");
  EXPECT_EQ(to_string(Morphism(TypeII{el(1, 2, b2)})), "<<1; 2>>");
  EXPECT_THROW(parse_morphism("[1; 0", b2), ParseError);
  EXPECT_THROW(parse_morphism("<<1; 2>", b2), ParseError);
  EXPECT_THROW(parse_morphism("<<1; 1/2>>", b2), ParseError);
  EXPECT_THROW(parse_morphism("[0; 1]", b2), Error);
}
