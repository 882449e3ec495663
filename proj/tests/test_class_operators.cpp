#include <doctest.h>

#include "support.hpp"

using namespace repgeo;
using namespace testing;

namespace {

FiniteRepresentation swap_c2() { return one_generator(3, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}); }

FiniteRepresentation c2xc2_through_first() {
    ModMatrix a(3, {{2, 0}, {0, 1}}), b(3, {{1, 0}, {0, 2}});
    return FiniteRepresentation::generate(3, 2, 1, {{a, ModMatrix(3, {{2}})}, {b, ModMatrix(3, {{1}})}});
}

std::string code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "none";
}

}  // namespace

TEST_CASE("cartesian products") {
    std::vector<FiniteRepresentation> two{negation_c2(), negation_c2()};
    auto p = cartesian_product(3, two);
    CHECK(p.action_dim() == 2);
    CHECK(p.order() == 4);
    std::vector<FiniteRepresentation> with_trivial{negation_c2(), trivial_group()};
    auto q = cartesian_product(3, with_trivial);
    CHECK(q.order() == 2);
    CHECK(q.action_dim() == 2);
    auto e = cartesian_product(3, std::vector<FiniteRepresentation>{});
    CHECK(e.order() == 1);
    CHECK(e.action_dim() == 0);
    std::vector<FiniteRepresentation> mixed{negation_c2(), cyclic_regular(2, 2)};
    CHECK_THROWS_AS(cartesian_product(3, mixed), AlgebraError);
}

TEST_CASE("filter validation") {
    CHECK(code_of([] { FilterSpec(2, {}); }) == "invalid_filter");
    CHECK(code_of([] { FilterSpec(2, {0b00, 0b11}); }) == "invalid_filter");
    CHECK(code_of([] { FilterSpec(2, {0b01}); }) == "invalid_filter");              // not upward closed
    CHECK(code_of([] { FilterSpec(2, {0b01, 0b10, 0b11}); }) == "invalid_filter");  // not intersection closed
    CHECK(code_of([] { FilterSpec(2, {0b01, 0b11}); }) == "none");
    CHECK(FilterSpec::principal(3, 0b011).members().size() == 2);
    CHECK(FilterSpec::principal(3, 0b011).core() == 0b011);
    std::vector<std::uint32_t> gens{0b011, 0b110};
    CHECK(FilterSpec::generated_by(3, gens).core() == 0b010);
    std::vector<std::uint32_t> disjoint{0b001, 0b110};
    CHECK(code_of([&] { FilterSpec::generated_by(3, disjoint); }) == "invalid_filter");
}

TEST_CASE("filtered products") {
    std::vector<FiniteRepresentation> reps{negation_c2(), swap_c2(), trivial_action_c2()};
    auto ultra = filtered_product(3, reps, FilterSpec::principal(3, 0b001));
    CHECK(ultra.core == std::vector<std::size_t>{0});
    CHECK(ultra.verified_literally);
    CHECK(ultra.rep.order() == 2);
    CHECK(ultra.rep.action_matrix(1) == negation_c2().action_matrix(1));
    auto full = filtered_product(3, reps, FilterSpec(3, {0b111}));
    CHECK(full.rep.order() == cartesian_product(3, reps).order());
    CHECK(full.rep.action_dim() == 4);
    std::vector<std::uint32_t> g12{0b011};
    auto two = filtered_product(3, reps, FilterSpec::generated_by(3, g12));
    CHECK(two.core == std::vector<std::size_t>{0, 1});
    CHECK(two.rep.action_dim() == 3);
    CHECK(two.rep.order() == 4);
    CHECK(two.verified_literally);
}

TEST_CASE("literal filtered product counts classes") {
    std::vector<FiniteRepresentation> reps{negation_c2(), negation_c2()};
    auto lit = literal_filtered_product(reps, FilterSpec::principal(2, 0b01), 1000);
    CHECK(lit.vector_classes.size() == 3);
    CHECK(lit.group_classes.size() == 2);
    auto all = literal_filtered_product(reps, FilterSpec(2, {0b11}), 1000);
    CHECK(all.vector_classes.size() == 9);
    CHECK_THROWS_AS(literal_filtered_product(reps, FilterSpec(2, {0b11}), 5), BudgetError);
}

TEST_CASE("generated subrepresentations") {
    auto rep = swap_c2();
    auto none = generated_subrepresentation(rep, {}, {});
    CHECK(none.module_basis.rows() == 0);
    CHECK(none.group_elements == std::vector<std::size_t>{0});
    auto orbit = generated_subrepresentation(rep, {{1, 0}}, {1});
    CHECK(orbit.module_basis.rows() == 2);
    CHECK(orbit.group_elements.size() == 2);
    auto fixed = generated_subrepresentation(rep, {{1, 1}}, {1});
    CHECK(fixed.module_basis.rows() == 1);
    auto sub = fixed.as_representation(rep);
    CHECK(sub.action_dim() == 1);
    CHECK(sub.order() == 2);
    CHECK(action_kernel(sub).size() == 2);
    auto no_group = generated_subrepresentation(rep, {{1, 0}}, {});
    CHECK(no_group.module_basis.rows() == 1);
}

TEST_CASE("quotients by normal subgroups of the kernel") {
    auto rep = c2xc2_through_first();
    auto same = qr_quotient(rep, std::vector<std::size_t>{0});
    CHECK(same.order() == rep.order());
    auto kernel = action_kernel(rep);
    auto q = qr_quotient(rep, kernel);
    CHECK(q.order() == 2);
    CHECK(action_kernel(q).size() == 1);
    auto fi = faithful_image(rep);
    CHECK(q.order() == fi.order());
    CHECK(std::vector<std::size_t>{action_kernel(q).size()} == std::vector<std::size_t>{action_kernel(fi).size()});
    std::vector<std::size_t> acting{0, rep.generator_element(0)};
    std::sort(acting.begin(), acting.end());
    std::vector<std::size_t> not_subgroup{0, rep.generator_element(0), rep.generator_element(1)};
    std::sort(not_subgroup.begin(), not_subgroup.end());
    CHECK(code_of([&] { qr_quotient(rep, not_subgroup); }) == "not_normal");
    CHECK(code_of([&] { qr_quotient(rep, acting); }) == "not_in_kernel");
}

TEST_CASE("quotient kernel size") {
    Rng rng(51);
    for (int t = 0; t < 15; ++t) {
        auto rep = random_rep(rng, 3, 1, 12);
        auto kernel = action_kernel(rep);
        auto q = qr_quotient(rep, kernel);
        CHECK(q.order() * kernel.size() == rep.order());
        CHECK(action_kernel(q).size() == 1);
        auto trivial = qr_quotient(rep, std::vector<std::size_t>{0});
        CHECK(action_kernel(trivial).size() == kernel.size());
    }
}

TEST_CASE("inflation along an epimorphism") {
    auto d = negation_c2();
    // C4 generated by a quarter turn over F3, mapped onto C2
    ModMatrix quarter(3, {{0, 2}, {1, 0}});
    auto c4 = q0_inflation(d, 2, {{quarter, 1}});
    CHECK(c4.order() == 4);
    CHECK(action_kernel(c4).size() == 2);
    auto same = q0_inflation(d, 1, {{d.group_matrix(1), 1}});
    CHECK(same.order() == 2);
    CHECK(same.action_matrix(1) == d.action_matrix(1));
    auto trivial = q0_inflation(trivial_group(), 2, {{quarter, 0}});
    CHECK(trivial.order() == 4);
    CHECK(action_kernel(trivial).size() == 4);
    // C2 cannot map onto C2 by sending the generator to the identity
    CHECK(code_of([&] { q0_inflation(d, 1, {{d.group_matrix(1), 0}}); }) == "not_surjective");
    // an element of order 3 cannot map to one of order 2
    ModMatrix order3(3, {{1, 1}, {0, 1}});
    CHECK(code_of([&] { q0_inflation(d, 2, {{order3, 1}}); }) == "not_homomorphism");
}

TEST_CASE("quasi-identities survive products and subrepresentations") {
    Rng rng(52);
    for (int t = 0; t < 15; ++t) {
        auto a = random_rep(rng, 3, 1, 6, 1);
        auto b = random_rep(rng, 3, 1, 6, 1);
        std::vector<FiniteRepresentation> both{a, b};
        auto prod = cartesian_product(3, both);
        auto sub = generated_subrepresentation(a, {{1}}, {a.generator_element(0)}).as_representation(a);
        for (int q = 0; q < 5; ++q) {
            QuasiIdentity qi;
            qi.arity = {1, 1};
            qi.premises.push_back(random_module_element(rng, Field::prime(3), 1, 1, 3, 2));
            qi.conclusion = random_module_element(rng, Field::prime(3), 1, 1, 3, 2);
            bool in_a = check_quasi_identity(a, qi).holds, in_b = check_quasi_identity(b, qi).holds;
            if (in_a && in_b) CHECK(check_quasi_identity(prod, qi).holds);
            if (in_a) CHECK(check_quasi_identity(sub, qi).holds);
        }
    }
}
