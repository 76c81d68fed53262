#include <doctest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "hardy/norms.hpp"
#include "hardy/operators.hpp"

using namespace hardy;

namespace {

double inner(const GridFunction& u, const GridFunction& v) {
    double s = 0.0;
    for (std::size_t c = 0; c < u.size(); ++c) s += u[c] * v[c];
    return s * u.spec().cell_volume();
}

double l1_diff(const GridFunction& u, const GridFunction& v) {
    GridFunction d = u;
    for (std::size_t c = 0; c < d.size(); ++c) d[c] -= v[c];
    return l1_norm(d);
}

const GridSpec& tiny() {
    static const GridSpec s = GridSpec::box(1, 8, 0.0, 1.0);
    return s;
}

AtomDictionary tiny_dict(double q) {
    DictionaryOptions o;
    o.q = q;
    o.pair_cells_cap = 4;
    return build_dictionary(tiny(), o);
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("identity and zero operators") {
    const GridSpec s = GridSpec::box(1, 32, 0.0, 1.0);
    const auto f = testing::random_function(s, 1);
    const auto I = apply(OperatorSpec::identity(s), f);
    const auto Z = apply(OperatorSpec::zero(s), f);
    for (std::size_t c = 0; c < f.size(); ++c) {
        CHECK(I[c] == f[c]);
        CHECK(Z[c] == 0.0);
    }
    CHECK_THROWS_AS(OperatorSpec::dense(s, std::vector<double>(10, 0.0)), Error);
}

TEST_CASE("kernel and dense forms agree") {
    for (int dim : {1, 2}) {
        const GridSpec s = dim == 1 ? GridSpec::box(1, 64, 0.0, 1.0) : GridSpec::box(2, 16, 0.0, 1.0);
        const int r = 3;
        const int width = 2 * r + 1;
        std::mt19937_64 rng(dim);
        std::uniform_real_distribution<double> u(-1, 1);
        std::vector<double> k(std::size_t(dim == 1 ? width : width * width));
        for (double& v : k) v = u(rng);
        const auto K = OperatorSpec::kernel(s, r, k);
        const auto D = K.to_dense();
        const auto f = testing::random_function(s, 7);
        const auto a = apply(K, f);
        const auto b = apply(D, f);
        for (std::size_t c = 0; c < f.size(); ++c) CHECK(a[c] == doctest::Approx(b[c]).epsilon(1e-12));
    }
    const GridSpec s = GridSpec::box(1, 64, 0.0, 1.0);
    const auto H = hilbert_kernel(s, 0.25);
    const auto f = testing::random_function(s, 2);
    const auto a = apply(H, f);
    const auto b = apply(H.to_dense(), f);
    for (std::size_t c = 0; c < f.size(); ++c) CHECK(a[c] == doctest::Approx(b[c]).epsilon(1e-12));
}

TEST_CASE("adjoints") {
    const GridSpec s = GridSpec::box(1, 64, 0.0, 1.0);
    const auto H = hilbert_kernel(s, 0.25);
    const auto D = random_dense(s, 3);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto f = testing::random_function(s, seed);
        const auto g = testing::random_function(s, seed + 50);
        for (const auto* T : {&H, &D})
            CHECK(inner(apply(*T, f), g) == doctest::Approx(inner(f, adjoint(*T, g))).epsilon(1e-12));
        // odd kernel: the adjoint is the negative
        const auto hs = adjoint(H, g);
        const auto hg = apply(H, g);
        for (std::size_t c = 0; c < g.size(); ++c) CHECK(hs[c] == doctest::Approx(-hg[c]).epsilon(1e-12));
    }
}

TEST_CASE("sparse application matches dense application") {
    const GridSpec s = GridSpec::box(1, 64, 0.0, 1.0);
    const auto H = hilbert_kernel(s, 0.25);
    const auto f = testing::haar(s, 0.25, 0.5);
    const auto a = apply(H, f);
    const auto b = apply(H, SparseFunction::from_grid(f));
    for (std::size_t c = 0; c < f.size(); ++c) CHECK(a[c] == doctest::Approx(b[c]).epsilon(1e-12));
}

TEST_CASE("operator json round trip") {
    const GridSpec s = GridSpec::box(1, 16, 0.0, 1.0);
    for (const auto& T : {hilbert_kernel(s, 0.25), random_dense(s, 4)}) {
        const auto back = OperatorSpec::from_json(nlohmann::json::parse(T.to_json().dump()));
        CHECK(back.kind() == T.kind());
        CHECK(back.radius() == T.radius());
        CHECK(back.data() == T.data());
    }
}

TEST_CASE("atom suprema") {
    SUBCASE("zero operator") {
        const auto dict = tiny_dict(2.0);
        CHECK(atom_supremum(OperatorSpec::zero(tiny()), dict, 50, 1).value == 0.0);
        CHECK(exact_atom_bound(OperatorSpec::zero(tiny()), dict) == 0.0);
    }
    SUBCASE("identity is contractive on (1,2)-atoms") {
        const auto dict = tiny_dict(2.0);
        const auto I = OperatorSpec::identity(tiny());
        CHECK(atom_supremum(I, dict, 200, 2).value <= 1.0 + 1e-12);
        CHECK(exact_atom_bound(I, dict) <= 1.0 + 1e-12);
    }
    SUBCASE("sampled <= exact <= certified") {
        for (double q : {2.0, kInfinity}) {
            const auto dict = tiny_dict(q);
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                const auto T = random_dense(tiny(), seed);
                const double sampled = atom_supremum(T, dict, 100, seed).value;
                const double exact = exact_atom_bound(T, dict);
                CHECK(sampled <= exact * (1 + 1e-9));
                CHECK(exact <= certified_atom_upper_bound(T, dict) * (1 + 1e-9));
            }
        }
    }
    SUBCASE("random atoms are valid") {
        const auto dict = tiny_dict(2.0);
        std::mt19937_64 rng(8);
        for (int i = 0; i < 50; ++i) {
            std::size_t ball = 0;
            const auto a = random_atom(dict, rng, &ball);
            const auto cert = atom_validate(a, tiny(), dict.balls[ball], 2.0);
            CHECK(cert.valid);
            CHECK(cert.size_ratio == doctest::Approx(1.0));
        }
    }
    SUBCASE("Hilbert estimate is stable under more samples") {
        const GridSpec s = GridSpec::box(1, 256, 0.0, 1.0);
        DictionaryOptions o;
        o.root = DyadicCube{2, {1, 0}};
        const auto dict = build_dictionary(s, o);
        const auto H = hilbert_kernel(s, 0.25);
        const double a200 = atom_supremum(H, dict, 200, 3).value;
        const double a400 = atom_supremum(H, dict, 400, 3).value;
        CHECK(a400 >= a200);
        CHECK(a400 <= 1.5 * a200);
    }
}

TEST_CASE("dual BMO bound") {
    const auto dict = tiny_dict(2.0);
    const auto f = testing::random_function(tiny(), 12);
    CHECK(bmo_dual_check(OperatorSpec::zero(tiny()), f, dict, 1.0).bmo == 0.0);
    const auto id = bmo_dual_check(OperatorSpec::identity(tiny()), f, dict, 1.0);
    CHECK(id.ok);
    CHECK(id.ratio <= 2.0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto T = random_dense(tiny(), 40 + seed);
        const auto g = testing::random_function(tiny(), 60 + seed);
        const auto rep = bmo_dual_check(T, g, dict, exact_atom_bound(T, dict));
        CHECK(rep.ok);
        CHECK(rep.ratio <= 2.0);
    }
}

TEST_CASE("extension through finite decompositions") {
    const GridSpec s = testing::corpus_grid(256);
    const auto fam = TestFamily::standard(s, s.side_length());
    const auto f = testing::haar(s, 0.0, 1.0);
    const auto g = testing::haar(s, 0.5, 1.0, -2.0);
    FiniteOptions o;

    SUBCASE("identity reproduces f") {
        const auto e = extend_apply(OperatorSpec::identity(s), f, fam, o, 1.0);
        CHECK(l1_diff(e.tf, f) <= 1e-8 * l1_norm(f));
        CHECK(e.chain.first_ok);
        CHECK(e.chain.second_ok);
        CHECK(e.chain.termwise_ok);
        const auto rep = consistency_check(OperatorSpec::identity(s), f, fam, o, 1.0);
        CHECK(rep.ok);
        CHECK(rep.difference <= rep.residual_l1 * (1 + 1e-9) + 1e-15);
    }
    SUBCASE("linearity against direct application") {
        const auto T = random_dense(s, 9, 1.0 / s.cell_count());
        GridFunction sum = f;
        for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += g[c];
        const auto e = extend_apply(T, sum, fam, o, 0.0);
        const auto direct = apply(T, f);
        const auto other = apply(T, g);
        GridFunction both = direct;
        for (std::size_t c = 0; c < both.size(); ++c) both[c] += other[c];
        CHECK(l1_diff(e.tf, both) <= 1e-6 * l1_norm(both));
        CHECK(e.chain.a_est >= 0.0);
        CHECK(e.chain.first_ok);
        CHECK(consistency_check(T, f, fam, o, 0.0).ok);
    }
    SUBCASE("Hilbert bound chain") {
        const auto H = hilbert_kernel(s, 0.5);
        const auto e = extend_apply(H, f, fam, o, 0.0);
        CHECK(e.chain.tf_l1 <= e.chain.a_est * e.chain.cost * (1 + 1e-9));
        CHECK(e.chain.first_ok);
        CHECK(e.chain.termwise_ok);
        CHECK(consistency_check(H, f, fam, o, e.chain.a_est).ok);
    }
}

TEST_CASE("Meyer family") {
    const GridSpec s = GridSpec::box(1, 512, -1.5, 4.0);
    for (int j = 0; j <= 3; ++j) {
        const auto f = meyer_step(s, j);
        CHECK(std::abs(integrate(f)) <= 1e-12 * l1_norm(f));
        for (std::size_t c = 0; c < s.cell_count(); ++c) {
            const double x = s.center(c)[0];
            if (x < -0.5 || x > 0.5) CHECK(f[c] == 0.0);
        }
        const auto g = mollify(f, 1.0 / 64);
        CHECK(std::abs(integrate(g)) <= 1e-12 * l1_norm(f));
    }

    MeyerConfig cfg;
    cfg.j_max = 2;
    cfg.cells = 512;
    const auto rows = meyer_ratio_experiment(cfg);
    REQUIRE(rows.size() == 3);
    // one block: every ratio is that of a single atom
    CHECK(rows[0].rho_2_step == doctest::Approx(rows[0].rho_inf_step).epsilon(0.1));
    CHECK(rows[0].rho_inf_mollified == doctest::Approx(rows[0].rho_inf_step).epsilon(0.1));
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].rho_inf_step > rows[i - 1].rho_inf_step);
    for (const auto& r : rows) CHECK(r.rho_inf_step == doctest::Approx(r.lp_inf_step / r.h1_step));
    const auto csv = meyer_csv(rows);
    CHECK(csv.find("rho_inf_step") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') >= 4);
    CHECK(to_json(cfg)["cells"] == 512);
}

}  // TEST_SUITE
