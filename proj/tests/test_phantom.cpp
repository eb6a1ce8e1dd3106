#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <cdice/metrics.hpp>
#include <cdice/phantom.hpp>

using namespace cdice;
using namespace cdice::sim;

TEST_CASE("ellipsoid voxel count tracks the analytic volume", "[phantom]") {
    const PhantomSpec spec{{2.0, 3.0, 4.0}, Spacing(0.5, 0.5, 0.5), 1.0};
    const BinaryMask mask = make_ellipsoid_mask(spec);
    const double analytic = 4.0 / 3.0 * 3.14159265358979323846 * 2.0 * 3.0 * 4.0 / (0.5 * 0.5 * 0.5);  // ~804
    const double count = static_cast<double>(mask.set_count());
    CHECK(std::abs(count - analytic) / analytic < 0.05);
}

TEST_CASE("a one-voxel ellipsoid still contains the centre", "[phantom]") {
    const PhantomSpec spec{{0.2, 0.2, 0.2}, Spacing(0.5, 0.5, 0.5), 0.0};
    const BinaryMask mask = make_ellipsoid_mask(spec);
    CHECK(mask.set_count() >= 1);
    const auto& d = mask.dims();
    CHECK(mask.volume().at(d.nx / 2, d.ny / 2, d.nz / 2) == 1.0);
}

TEST_CASE("the mask is mirror symmetric about the centre planes", "[phantom]") {
    const PhantomSpec spec{{2.0, 3.0, 4.0}, Spacing(0.5, 0.5, 0.5), 0.5};
    const BinaryMask mask = make_ellipsoid_mask(spec);
    const auto& d = mask.dims();
    REQUIRE(d.nx % 2 == 1);
    for (std::size_t z = 0; z < d.nz; ++z)
        for (std::size_t y = 0; y < d.ny; ++y)
            for (std::size_t x = 0; x < d.nx; ++x)
                CHECK(mask.volume().at(x, y, z) == mask.volume().at(d.nx - 1 - x, y, z));
}

TEST_CASE("degenerate specs are rejected", "[phantom]") {
    CHECK_THROWS_AS(make_ellipsoid_mask(PhantomSpec{{0.0, 1.0, 1.0}, {}, 0.0}), DegenerateSpecError);
    CHECK_THROWS_AS(make_ellipsoid_mask(PhantomSpec{{1.0, -2.0, 1.0}, {}, 0.0}), DegenerateSpecError);
    CHECK_THROWS_AS(make_ellipsoid_mask(PhantomSpec{{1.0, 1.0, 1.0}, {}, -1.0}), DegenerateSpecError);
}

TEST_CASE("gaussian map peaks at the centroid voxel", "[phantom]") {
    const PhantomSpec spec{{2.0, 3.0, 4.0}, Spacing(0.5, 0.5, 0.5), 1.0};
    const BinaryMask mask = make_ellipsoid_mask(spec);
    const ProbMap g = gaussian_probmap(mask, spec.semi_axes_mm, {});

    // Odd dims put a voxel centre exactly on the ellipsoid centroid.
    const auto& d = mask.dims();
    const double centre = g.volume().at(d.nx / 2, d.ny / 2, d.nz / 2);
    CHECK(std::abs(centre - 1.0) <= 1e-12);
    double max_value = 0.0;
    for (const double v : g.data()) max_value = std::max(max_value, v);
    CHECK(max_value == centre);
}

TEST_CASE("mask-only support matches the mask exactly", "[phantom]") {
    const PhantomSpec spec{{1.5, 2.0, 2.5}, Spacing(0.5, 0.5, 0.5), 1.0};
    const BinaryMask mask = make_ellipsoid_mask(spec);
    const ProbMap g = gaussian_probmap(mask, spec.semi_axes_mm, {0.5, GaussianSupport::MaskOnly});
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask.data()[i] == 1.0)
            CHECK(g.data()[i] > 0.0);
        else
            CHECK(g.data()[i] == 0.0);
    }
}

TEST_CASE("everywhere support fills the whole grid", "[phantom]") {
    const PhantomSpec spec{{1.5, 2.0, 2.5}, Spacing(0.5, 0.5, 0.5), 1.0};
    const BinaryMask mask = make_ellipsoid_mask(spec);
    const ProbMap g = gaussian_probmap(mask, spec.semi_axes_mm, {0.5, GaussianSupport::Everywhere});
    for (const double v : g.data()) CHECK(v > 0.0);
}

TEST_CASE("a very wide gaussian approaches the mask itself", "[phantom]") {
    const PhantomSpec spec{{2.0, 3.0, 4.0}, Spacing(0.5, 0.5, 0.5), 1.0};
    const BinaryMask mask = make_ellipsoid_mask(spec);
    const ProbMap g = gaussian_probmap(mask, spec.semi_axes_mm, {100.0, GaussianSupport::MaskOnly});

    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask.data()[i] == 1.0) CHECK(g.data()[i] > 0.999);

    // Support equals the mask, so the overlap is complete and cDC is 1.
    CHECK(std::abs(continuous_dice(mask, g).value - 1.0) <= 1e-12);
}

TEST_CASE("gaussian over an empty mask is rejected", "[phantom]") {
    const BinaryMask empty = validate_binary(ScalarVolume::filled(Dims(3, 3, 3), {}, 0.0));
    CHECK_THROWS_AS(gaussian_probmap(empty, {1, 1, 1}, {}), EmptyMaskError);
}

TEST_CASE("gaussian output satisfies the probmap invariant", "[phantom]") {
    const PhantomSpec spec{{2.0, 2.0, 2.0}, Spacing(0.5, 0.5, 0.5), 0.5};
    const BinaryMask mask = make_ellipsoid_mask(spec);
    for (const double scale : {0.1, 0.5, 2.0}) {
        const ProbMap g = gaussian_probmap(mask, spec.semi_axes_mm, {scale, GaussianSupport::Everywhere});
        CHECK_NOTHROW(validate_probmap(ScalarVolume(g.volume())));
    }
}
