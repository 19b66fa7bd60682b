#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "convextour/arcs.hpp"
#include "convextour/errors.hpp"
#include "convextour/oracle.hpp"
#include "convextour/planner.hpp"
#include "support/instance_gen.hpp"

using namespace convextour;

namespace {

const std::vector<Point> kSquare = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
const std::vector<Point> kRect = {{0, 0}, {10, 0}, {10, 2}, {0, 2}};
const double kDiag = 1.0 + std::sqrt(2.0) / 2.0;  // binding radius of (3.5,3.5)

// Tour boundary passes within tol of p: p is inside with +tol but not -tol.
bool touches(const Tour& t, Point p, double tol) {
    return contains_polygon(t, SimplePolygon({p}), tol) &&
           !contains_polygon(t, SimplePolygon({p}), -tol);
}

} // namespace

TEST(CriticalArcs, SquareDiagonalVertex) {
    MedialSkeleton T = build_skeleton(ConvexPolygon(kSquare));
    CriticalArc ca = critical_arc({3.5, 3.5}, 1, 2, T);
    EXPECT_NEAR(ca.circle.radius, kDiag, 1e-12);
    EXPECT_NEAR(ca.circle.center.x, 3.0 - std::sqrt(2.0) / 2.0, 1e-12);
    EXPECT_NEAR(ca.circle.center.y, 3.0 - std::sqrt(2.0) / 2.0, 1e-12);
    EXPECT_NEAR(ca.sweep, pi / 2, 1e-12);
    EXPECT_NEAR(ca.p1.x, 4.0, 1e-12);  // tangency on x=4
    EXPECT_NEAR(ca.p2.y, 4.0, 1e-12);  // tangency on y=4
    EXPECT_NEAR(dist(ca.circle.center, ca.vertex), ca.circle.radius, 1e-12);
}

TEST(CriticalArcs, InscribedCircleTangencyPoint) {
    MedialSkeleton T = build_skeleton(ConvexPolygon(kSquare));
    CriticalArc ca = critical_arc({4, 2}, 0, 1, T);
    EXPECT_NEAR(ca.circle.radius, 2.0, 1e-12);
    EXPECT_NEAR(ca.circle.center.x, 2.0, 1e-9);
    EXPECT_NEAR(ca.circle.center.y, 2.0, 1e-9);
}

TEST(CriticalArcs, RectangleParallelSupports) {
    MedialSkeleton T = build_skeleton(ConvexPolygon(kRect));
    CriticalArc ca = critical_arc({5, 1.8}, 2, 0, T);
    EXPECT_NEAR(ca.circle.radius, 1.0, 1e-12);
    // Chord test against the skeleton root at (9,1) picks the near center.
    EXPECT_NEAR(ca.circle.center.x, 5.6, 1e-12);
    EXPECT_NEAR(ca.circle.center.y, 1.0, 1e-12);
    EXPECT_NEAR(ca.sweep, pi, 1e-9);
}

TEST(CriticalArcs, InsideInscribedCircleRejected) {
    MedialSkeleton T = build_skeleton(ConvexPolygon(kSquare));
    EXPECT_THROW(critical_arc({2.5, 2.0}, 1, 2, T), NoCriticalArc);
}

TEST(OptimalTour, PointInsideInscribedCircle) {
    OptimalResult res = optimal_tour(ConvexPolygon(kSquare), SimplePolygon({{2, 2}}));
    EXPECT_DOUBLE_EQ(res.kappa_star, 0.5);
    EXPECT_FALSE(res.limiting_vertex.has_value());
    ASSERT_EQ(res.tour.elements.size(), 1u);
    EXPECT_DOUBLE_EQ(res.tour.kappa, res.kappa_star);
}

TEST(OptimalTour, DiagonalPoint) {
    OptimalResult res = optimal_tour(ConvexPolygon(kSquare), SimplePolygon({{3.5, 3.5}}));
    EXPECT_NEAR(res.kappa_star, 1.0 / kDiag, 1e-12);
    ASSERT_TRUE(res.limiting_vertex.has_value());
    EXPECT_LT(dist(*res.limiting_vertex, {3.5, 3.5}), 1e-12);
    int arcs = 0;
    for (const TourElement& e : res.tour.elements)
        if (e.is_arc()) {
            ++arcs;
            EXPECT_NEAR(e.circle.radius, kDiag, 1e-12);
        }
    EXPECT_EQ(arcs, 4);
    EXPECT_TRUE(touches(res.tour, {3.5, 3.5}, 1e-9));
}

TEST(OptimalTour, ObstacleInsideInscribedCircleGetsMaximalPath) {
    ConvexPolygon E(kSquare);
    SimplePolygon I({{1.5, 1.5}, {2.5, 1.6}, {2.2, 2.7}});
    OptimalResult res = optimal_tour(E, I);
    MedialSkeleton T = build_skeleton(E);
    EXPECT_EQ(res.kappa_star, 1.0 / T.inradius());
    Tour direct = maximal_path(T, res.kappa_star);
    ASSERT_EQ(res.tour.elements.size(), direct.elements.size());
    for (size_t i = 0; i < direct.elements.size(); ++i) {
        EXPECT_EQ(res.tour.elements[i].kind, direct.elements[i].kind);
        EXPECT_EQ(res.tour.elements[i].circle.radius, direct.elements[i].circle.radius);
    }
}

TEST(OptimalTour, SegmentObstacle) {
    OptimalResult res =
        optimal_tour(ConvexPolygon(kSquare), SimplePolygon({{1, 2}, {3.5, 3.5}}));
    EXPECT_NEAR(res.kappa_star, 1.0 / kDiag, 1e-12);
}

TEST(OptimalTour, VertexOnInscribedCircleDoesNotTighten) {
    OptimalResult res = optimal_tour(ConvexPolygon(kSquare), SimplePolygon({{4, 2}}));
    EXPECT_NEAR(res.kappa_star, 0.5, 1e-12);
}

TEST(OptimalTour, RejectsObstacleOutsideWorkspace) {
    EXPECT_THROW(optimal_tour(ConvexPolygon(kSquare), SimplePolygon({{5, 2}})), InvalidInput);
}

TEST(OptimalTour, LoopIterationBound) {
    std::mt19937_64 rng(601);
    for (int trial = 0; trial < 30; ++trial) {
        ConvexPolygon E(testgen::random_hull(rng, 3 + int(rng() % 12)));
        SimplePolygon I = testgen::random_obstacle(rng, E, 1 + int(rng() % 20));
        OptimalResult res = optimal_tour(E, I);
        ArcStructure arcs = build_arcs(build_skeleton(E));
        size_t nv = convex_hull(I.vertices()).vertices.size();
        EXPECT_LE(res.loop_iterations, nv + arcs.size());
    }
}

TEST(OptimalTour, MatchesOracleOnRandomInstances) {
    int checked = 0;
    for (std::uint64_t seed = 1; checked < 150 && seed < 400; ++seed) {
        testgen::Instance in = testgen::random_instance(seed, 16, 24);
        double ro;
        try {
            ro = oracle_min_critical_radius(in.outer, in.obstacle);
        } catch (const GeometryError&) {
            continue;  // degenerate draw
        }
        OptimalResult res = optimal_tour(in.outer, in.obstacle);
        EXPECT_NEAR(1.0 / res.kappa_star, ro, 1e-9 * ro) << "seed " << seed;
        ++checked;
    }
    EXPECT_GE(checked, 150);
}

TEST(OptimalTour, MonotoneInObstacle) {
    std::mt19937_64 rng(602);
    for (int trial = 0; trial < 40; ++trial) {
        ConvexPolygon E(testgen::random_hull(rng, 3 + int(rng() % 10)));
        SimplePolygon small = testgen::random_obstacle(rng, E, 1 + int(rng() % 6));
        std::vector<Point> grown = small.vertices();
        SimplePolygon extra = testgen::random_obstacle(rng, E, 3);
        for (Point p : extra.vertices()) grown.push_back(p);
        ConvexHull h = convex_hull(grown);
        SimplePolygon big(h.degenerate() ? grown : h.vertices);
        double k1 = optimal_tour(E, small).kappa_star;
        double k2 = optimal_tour(E, big).kappa_star;
        EXPECT_LE(k1, k2 * (1 + 1e-9) + 1e-12);
    }
}

TEST(OptimalTour, RigidMotionInvariance) {
    std::mt19937_64 rng(603);
    std::uniform_real_distribution<double> ang(0.0, two_pi), off(-50.0, 50.0);
    for (int trial = 0; trial < 30; ++trial) {
        testgen::Instance in = testgen::random_instance(700 + trial, 12, 16);
        double k0 = optimal_tour(in.outer, in.obstacle).kappa_star;

        Rigid2 g = Rigid2::from(ang(rng), {off(rng), off(rng)});
        std::vector<Point> ev, iv;
        for (Point p : in.outer.vertices()) ev.push_back(g.apply(p));
        for (Point p : in.obstacle.vertices()) iv.push_back(g.apply(p));
        double k1 = optimal_tour(ConvexPolygon(ev), SimplePolygon(iv)).kappa_star;
        EXPECT_NEAR(k1, k0, 1e-9 * k0);
    }
}

TEST(OptimalTour, ScaleCovariance) {
    std::mt19937_64 rng(604);
    std::uniform_real_distribution<double> lam(0.1, 20.0);
    for (int trial = 0; trial < 30; ++trial) {
        testgen::Instance in = testgen::random_instance(800 + trial, 12, 16);
        double k0 = optimal_tour(in.outer, in.obstacle).kappa_star;
        double l = lam(rng);
        std::vector<Point> ev, iv;
        for (Point p : in.outer.vertices()) ev.push_back(l * p);
        for (Point p : in.obstacle.vertices()) iv.push_back(l * p);
        double k1 = optimal_tour(ConvexPolygon(ev), SimplePolygon(iv)).kappa_star;
        EXPECT_NEAR(k1, k0 / l, 1e-9 * k0 / l);
    }
}

TEST(TourWithCurvature, ContainmentGate) {
    ConvexPolygon E(kSquare);
    SimplePolygon I({{3.5, 3.5}});
    EXPECT_TRUE(tour_with_curvature(E, I, 1.0 / kDiag).has_value());
    EXPECT_FALSE(tour_with_curvature(E, I, 0.5).has_value());
    EXPECT_TRUE(tour_with_curvature(E, SimplePolygon({{2, 2}}), 2.0).has_value());
    EXPECT_FALSE(tour_with_curvature(E, I, 1.0 / 3.0).has_value());  // 1/kappa > r*
    EXPECT_THROW(tour_with_curvature(E, I, 0.0), InvalidInput);
}

TEST(ConstrainedTour, TangentLineExample) {
    ConvexPolygon E(kSquare);
    SimplePolygon I({{2, 2}});
    std::vector<TangentConstraint> cons = {{{2, 0.5}, Direction(1, 0)}};
    OptimalResult res = constrained_tour(E, I, cons);
    EXPECT_NEAR(res.kappa_star, 1.0 / 1.75, 1e-12);
    EXPECT_TRUE(touches(res.tour, {2, 0.5}, 1e-9));
    for (const TourElement& e : res.tour.elements)
        if (e.is_arc()) EXPECT_NEAR(e.circle.radius, 1.75, 1e-12);
}

TEST(ConstrainedTour, NoConstraintsMatchesOptimal) {
    ConvexPolygon E(kSquare);
    SimplePolygon I({{3.5, 3.5}});
    OptimalResult a = optimal_tour(E, I);
    OptimalResult b = constrained_tour(E, I, {});
    EXPECT_EQ(a.kappa_star, b.kappa_star);
}

TEST(ConstrainedTour, LineThroughObstacleInfeasible) {
    ConvexPolygon E(kSquare);
    SimplePolygon I({{1.5, 1.5}, {2.5, 1.5}, {2.5, 2.5}, {1.5, 2.5}});
    std::vector<TangentConstraint> cons = {{{1.5, 2.0}, Direction(1, 0)}};
    EXPECT_THROW(constrained_tour(E, I, cons), Infeasible);
}

TEST(ConstrainedTour, PointOutsideWorkspaceRejected) {
    std::vector<TangentConstraint> cons = {{{5, 2}, Direction(0, 1)}};
    EXPECT_THROW(constrained_tour(ConvexPolygon(kSquare), SimplePolygon({{2, 2}}), cons),
                 InvalidInput);
}

TEST(TourOfPoints, Examples) {
    ConvexPolygon E(kSquare);
    EXPECT_DOUBLE_EQ(tour_of_points(E, {{2, 2}}).kappa_star, 0.5);
    OptimalResult res =
        tour_of_points(E, {{3.5, 3.5}, {0.5, 0.5}, {3.5, 0.5}, {0.5, 3.5}});
    EXPECT_NEAR(res.kappa_star, 1.0 / kDiag, 1e-12);
    EXPECT_THROW(tour_of_points(E, {{2, 2}, {4.5, 2}}), InvalidInput);
}

TEST(TourOfPoints, CloudInsideInscribedCircle) {
    ConvexPolygon E(kSquare);
    MedialSkeleton T = build_skeleton(E);
    std::mt19937_64 rng(605);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Point> pts;
    while (pts.size() < 1000) {
        Point p{2 + 1.9 * u(rng), 2 + 1.9 * u(rng)};
        if (dist(p, {2, 2}) < 1.9) pts.push_back(p);
    }
    EXPECT_EQ(tour_of_points(E, pts).kappa_star, 1.0 / T.inradius());
}
