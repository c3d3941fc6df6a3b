#include <catch_amalgamated.hpp>

#include "support.hpp"
#include "zz/error.hpp"
#include "zz/extension.hpp"

using namespace zz;
using zz::test::odp;
using zz::test::Rng;

namespace {

/** Endpoint object with B = Q: alpha = id, beta = 0, gamma = id. */
ZigZag endpoint()
{
    return {"Q_U[3]", 1, 1, 1, 1, QMatrix::identity(1), QMatrix(1, 1), QMatrix::identity(1)};
}

template <class F>
bool throws_kind(F f, ErrorKind kind)
{
    try
    {
        f();
    }
    catch (const Error& e)
    {
        return e.kind() == kind;
    }
    return false;
}

/** Witness checked by hand: block triangular, invertible, intertwining, class row carried. */
bool oracle_ext_iso(const ExtensionPresentation& e1, const ExtensionPresentation& e2, const ExtIsoWitness& w)
{
    ZigZag t1 = total_zigzag(e1), t2 = total_zigzag(e2);
    if (!test::oracle_iso(t1, t2, {w.e_minus, w.a_total, w.b_total, w.e_zero}))
        return false;
    std::size_t as = e1.sub.a_dim, bs = e1.sub.b_dim, aq = e1.quot.a_dim, bq = e1.quot.b_dim;
    if (!w.a_total.block(as, 0, aq, as).is_zero() || !w.b_total.block(bs, 0, bq, bs).is_zero())
        return false;
    if (e1.regime() == Regime::Collapsed)
        return QMatrix(1, aq, e2.class_values) * w.a_total.block(as, as, aq, aq) == QMatrix(1, aq, e1.class_values);
    return true;
}

}   // namespace

TEST_CASE("make_extension examples", "[extension]")
{
    ExtensionPresentation split = odp(0), corr = odp(1);
    CHECK(split.regime() == Regime::Collapsed);
    CHECK(split.class_scalar() == 0);
    CHECK(corr.class_scalar() == 1);
    CHECK(total_zigzag(split) == std_corrected("Q_U[3]", 1, 1));

    ExtensionPresentation block = make_extension(endpoint(), std_skyscraper(1), QMatrix::from_rows({{1}}));
    CHECK(block.regime() == Regime::Block);
    BlockGrid grid{{{endpoint().beta, QMatrix::from_rows({{1}})}, {std::nullopt, QMatrix::identity(1)}}};
    CHECK(total_zigzag(block).beta == block_assemble(grid, {1, 1}, {1, 1}));
    CHECK(total_zigzag(block).beta == QMatrix::from_rows({{0, 1}, {0, 1}}));
}

TEST_CASE("make_extension errors", "[extension]")
{
    CHECK(throws_kind([] { make_extension(endpoint(), std_skyscraper(1), QMatrix(1, 2)); }, ErrorKind::ShapeMismatch));
    CHECK(throws_kind([] { make_extension(std_ic("Q_U[3]", 1, 1), std_skyscraper(1), QMatrix(0, 1)); },
                      ErrorKind::RegimeMismatch));
    CHECK(throws_kind([] { make_extension(endpoint(), std_skyscraper(1), Rational(1)); }, ErrorKind::RegimeMismatch));
    CHECK(throws_kind([] { make_extension(std_ic("Q_U[3]", 1, 1), std_corrected("L", 1, 1), Rational(1)); },
                      ErrorKind::NotPointSupported));
    ZigZag broken{"Q_U[3]", 1, 1, 1, 1, QMatrix(1, 1), QMatrix(1, 1), QMatrix(1, 1)};
    CHECK(throws_kind([&] { make_extension(broken, std_skyscraper(1), QMatrix(1, 1)); }, ErrorKind::InvalidTotal));
    CHECK(throws_kind([] { make_extension(std_ic("Q_U[3]", 1, 1), std_skyscraper(2), std::vector<Rational>{1}); },
                      ErrorKind::ShapeMismatch));
    // Class 0 is also accepted in the block regime.
    CHECK(make_extension(endpoint(), std_skyscraper(1), Rational(0)).u_block.is_zero());
}

TEST_CASE("extension_class examples", "[extension]")
{
    ExtClass s = extension_class(odp(0));
    CHECK(s.value == 0);
    CHECK(s.normalized == 0);
    CHECK(s.split());

    ExtClass five = extension_class(odp(5));
    CHECK(five.value == 5);
    CHECK(five.normalized == 1);
    CHECK(five.normalizer == 5);
    CHECK(verify_ext_iso(odp(5), normalized_presentation(odp(5)), five.witness));
    CHECK(normalized_presentation(odp(5)) == odp(1));
    // Scaling the quotient line by 1/5 carries class 1 onto class 5.
    ExtIsoWitness by_hand{QMatrix::identity(1), Rational(1, 5) * QMatrix::identity(1),
                          Rational(1, 5) * QMatrix::identity(1), QMatrix::identity(1)};
    CHECK(verify_ext_iso(odp(1), odp(5), by_hand));
    CHECK(oracle_ext_iso(odp(1), odp(5), by_hand));

    // u inside im beta_sub: beta_sub = id reaches every u.
    ExtensionPresentation inside = make_extension(std_corrected("Q_U[3]", 1, 1), std_skyscraper(1),
                                                  QMatrix::from_rows({{3}}));
    ExtClass c = extension_class(inside);
    CHECK(c.normalized == 0);
    CHECK(c.residual.is_zero());
    CHECK(oracle_ext_iso(inside, normalized_presentation(inside), c.witness));
    CHECK(total_zigzag(inside).gamma.is_zero());
}

TEST_CASE("block regime class and gamma correction", "[extension]")
{
    ExtensionPresentation e = make_extension(endpoint(), std_skyscraper(1), QMatrix::from_rows({{1}}));
    ZigZag t = total_zigzag(e);
    CHECK(t.gamma == QMatrix::from_rows({{1, -1}}));
    CHECK(validate(t).passed());
    ExtClass c = extension_class(e);
    CHECK(c.value == 1);
    CHECK(c.rank == 1);
    ExtensionPresentation half = make_extension(endpoint(), std_skyscraper(1), QMatrix::from_rows({{Rational(1, 2)}}));
    CHECK(extension_class(half).normalizer == Rational(1, 2));
    ExtIsoResult r = ext_isomorphic(e, half);
    REQUIRE(r);
    CHECK(oracle_ext_iso(e, half, *r.witness));
    ExtensionPresentation zero = make_extension(endpoint(), std_skyscraper(1), QMatrix(1, 1));
    CHECK_FALSE(ext_isomorphic(e, zero));
    CHECK_THROWS_AS(dual_presentation(e), Error);
}

TEST_CASE("total_zigzag examples", "[extension]")
{
    ZigZag shape = std_corrected("Q_U[3]", 1, 1);
    CHECK(total_zigzag(odp(0)) == shape);
    CHECK(total_zigzag(odp(1)) == shape);
    CHECK(total_zigzag(make_extension(std_skyscraper(1), std_skyscraper(1), Rational(0))) == std_skyscraper(2));
}

TEST_CASE("ext_isomorphic examples", "[extension]")
{
    ExtIsoResult no = ext_isomorphic(odp(0), odp(1));
    CHECK_FALSE(no);
    CHECK_FALSE(no.certificate.empty());

    ExtIsoResult yes = ext_isomorphic(odp(2), odp(Rational(-1, 3)));
    REQUIRE(yes);
    REQUIRE(yes.quotient_scale());
    CHECK(*yes.quotient_scale() == -6);
    CHECK(oracle_ext_iso(odp(2), odp(Rational(-1, 3)), *yes.witness));

    ExtIsoResult self = ext_isomorphic(odp(1), odp(1));
    REQUIRE(self);
    CHECK(oracle_ext_iso(odp(1), odp(1), *self.witness));

    CHECK_FALSE(ext_isomorphic(odp(1), make_extension(std_ic("Q_U[3]", 1, 2), std_skyscraper(1), Rational(1))));
    ExtensionPresentation big = make_extension(std_ic("Q_U[3]", 7, 1), std_skyscraper(1), Rational(1));
    CHECK(throws_kind([&] { ext_isomorphic(big, big); }, ErrorKind::SizeBound));
}

TEST_CASE("class vectors over several quotient coordinates", "[extension]")
{
    ZigZag ic = std_ic("Q_U[3]", 2, 2);
    auto ext = [&](std::vector<Rational> c) { return make_extension(ic, std_skyscraper(2), c); };
    ExtIsoResult swap = ext_isomorphic(ext({1, 0}), ext({0, 1}));
    REQUIRE(swap);
    CHECK(oracle_ext_iso(ext({1, 0}), ext({0, 1}), *swap.witness));
    CHECK(ext_isomorphic(ext({1, 1}), ext({3, -2})));
    CHECK_FALSE(ext_isomorphic(ext({1, 0}), ext({0, 0})));
    ExtClass c = extension_class(ext({0, 4}));
    CHECK(c.value == 4);
    CHECK(normalized_presentation(ext({0, 4})).class_values == std::vector<Rational>{0, 1});
}

TEST_CASE("classification over the default grid", "[extension]")
{
    Classification cl = classify_selfdual_rank_one(1, 1);
    CHECK(cl.isomorphism_classes == 2);
    REQUIRE(cl.classes.size() == 2);
    int corrected = 0;
    for (const auto& rep : cl.classes)
    {
        CHECK(rep.self_dual);
        if (rep.corrected)
        {
            ++corrected;
            CHECK_FALSE(rep.ext_class.split());
            ZigZag t = total_zigzag(rep.presentation);
            IsoResult d = is_isomorphic(dualize(t), t);
            REQUIRE(d);
            CHECK(test::oracle_iso(dualize(t), t, *d.witness));
            CHECK(rep.members.size() == 6);
        }
        else
        {
            CHECK(rep.ext_class.split());
            CHECK(rep.members == std::vector<Rational>{0});
        }
    }
    CHECK(corrected == 1);
    CHECK(cl.verdicts.size() == 21);
    for (const auto& v : cl.verdicts)
    {
        CHECK(v.isomorphic == ((v.first == 0) == (v.second == 0)));
        CHECK_FALSE(v.certificate.empty());
    }
}

TEST_CASE("self-duality of the ODP presentations", "[extension]")
{
    CHECK(check_self_duality(odp(0)).self_dual);
    CHECK(check_self_duality(odp(1)).self_dual);
    ExtensionPresentation d = dual_presentation(odp(3));
    CHECK(d.class_values == std::vector<Rational>{3});
    CHECK(d.sub == dualize(std_ic("Q_U[3]", 1, 1)));
}

TEST_CASE("extension properties over the class grid", "[extension][property]")
{
    std::vector<Rational> grid = default_class_grid();
    for (const auto& c : grid)
    {
        ExtClass k = extension_class(odp(c));
        CHECK((k.normalized == 0) == (c == 0));
        CHECK(oracle_ext_iso(odp(c), normalized_presentation(odp(c)), k.witness));
        CHECK(compressed_shape(total_zigzag(odp(c))) == compressed_shape(total_zigzag(odp(0))));
        for (const auto& d : grid)
        {
            ExtIsoResult r = ext_isomorphic(odp(c), odp(d));
            CHECK(static_cast<bool>(r) == (extension_class(odp(c)).normalized == extension_class(odp(d)).normalized));
            if (r)
                CHECK(oracle_ext_iso(odp(c), odp(d), *r.witness));
        }
    }
    ExtensionPresentation split = odp(0);
    CHECK(is_isomorphic(total_zigzag(split), direct_sum(split.sub, split.quot)));
}

TEST_CASE("random block-regime presentations", "[extension][property]")
{
    Rng rng(71);
    int tested = 0;
    while (tested < 40)
    {
        ZigZag sub = test::random_valid_zigzag(rng, 3);
        if (sub.b_dim == 0)
            continue;
        std::size_t r = 1 + static_cast<std::size_t>(tested % 2);
        ExtensionPresentation e = make_extension(sub, std_skyscraper(r), test::random_matrix(rng, sub.b_dim, r, 2));
        ZigZag t = total_zigzag(e);
        CHECK(test::oracle_exact(t.alpha, t.beta));
        CHECK(test::oracle_exact(t.beta, t.gamma));
        ExtClass c = extension_class(e);
        CHECK(oracle_ext_iso(e, normalized_presentation(e), c.witness));
        ExtensionPresentation zero = make_extension(sub, std_skyscraper(r), QMatrix(sub.b_dim, r));
        bool iso_zero = static_cast<bool>(ext_isomorphic(e, zero));
        CHECK(iso_zero == c.split());
        if (c.split())
            CHECK(is_isomorphic(t, direct_sum(sub, std_skyscraper(r))));
        ++tested;
    }
}

TEST_CASE("presentation JSON", "[extension]")
{
    nlohmann::json j = to_json(odp(Rational(-2, 4)));
    CHECK(j.dump() == to_json(odp(Rational(-1, 2))).dump());
    nlohmann::json k = to_json(extension_class(odp(3)));
    CHECK(k.at("normalized") == "1");
}
