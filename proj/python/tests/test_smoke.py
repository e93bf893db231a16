import json
import unittest
from fractions import Fraction

import semitree as st

TRIPOD = {"nodes": ["c", "x", "y", "z"], "edges": [["c", "x", "1"], ["c", "y", "2"], ["c", "z", "3"]], "base": "c"}
TRIPOD_RAY = {"nodes": ["c", "x", "y", "z"], "edges": [["c", "x", "inf"], ["c", "y", "2"], ["c", "z", "3"]],
              "base": "c"}


class UniversalTree(unittest.TestCase):
    def test_distance_and_join(self):
        p = st.Point(1, [(2, 1)])
        q = st.Point(1)
        self.assertEqual(st.dist(p, q), Fraction(2))
        self.assertEqual(st.join(p, q), st.Point(2))
        self.assertEqual(st.join_height(p, q), 2)
        self.assertTrue(p <= st.Point(3))
        self.assertFalse(st.Point(3) <= p)

    def test_rational_arguments(self):
        p = st.Point("1/2", [(Fraction(3, 2), 1)])
        self.assertEqual(p.a, Fraction(1, 2))
        self.assertEqual(p.segments, [(Fraction(3, 2), 1)])
        self.assertEqual(st.Point.from_json(p.to_json()), p)

    def test_non_canonical_point_is_rejected(self):
        with self.assertRaises(st.DomainError):
            st.Point(1, [(2, 1), (3, 0)])
        self.assertEqual(st.Point.canonical(1, [(3, 1), (2, 1)]), st.Point(1, [(3, 1)]))

    def test_similarities(self):
        z2 = st.Group.cyclic(2)
        h = st.Similarity.homothety(z2, 2)
        self.assertEqual(h(st.Point(1, [(2, 1)])), st.Point(2, [(4, 1)]))
        self.assertEqual((h @ h).coefficient, 4)
        p, q = st.Point(1, [(2, 1)]), st.Point(3)
        self.assertEqual(st.Similarity.mapping(z2, p, q)(p), q)

    def test_fibers(self):
        point, distance, unique = st.fiber_nearest(st.Point(3, [(4, 1)]), 5)
        self.assertEqual((point, distance, unique), (st.Point(5), 2, True))

    def test_orders(self):
        model = st.UniversalTree(st.Group.cyclic(2))
        omega = st.UniversalOrder.at_end(model, st.UpwardEnd())
        self.assertEqual(omega.sup([st.Point(1, [(2, 1)]), st.Point(1)]), st.Point(2))
        self.assertFalse(omega.is_rooted)


class RayTrees(unittest.TestCase):
    def test_distances(self):
        tree = st.RayTree.from_json(json.dumps(TRIPOD))
        self.assertEqual(tree.dist(tree.node("x"), tree.node("z")), 4)
        self.assertEqual(tree.median(tree.node("x"), tree.node("y"), tree.node("z")), tree.node("c"))

    def test_busemann(self):
        tree = st.RayTree.from_json(json.dumps(TRIPOD_RAY))
        self.assertEqual(tree.busemann(st.EndId(0), tree.node("z")), 3)

    def test_rooted_hausdorff(self):
        tree = st.RayTree.from_json(json.dumps(TRIPOD))
        tau = st.TreeOrder.rooted(tree, tree.node("x"))
        sigma = st.TreeOrder.rooted(tree, tree.node("y"))
        self.assertEqual(tau.hausdorff(sigma), 3)
        self.assertEqual(tau.phi(), tree.node("x"))

    def test_bad_tree_is_a_parse_error(self):
        with self.assertRaises(st.ParseError):
            st.RayTree.from_json("{")


class Audits(unittest.TestCase):
    def test_realize(self):
        d = [[0, 3, 4, 1], [3, 0, 5, 2], [4, 5, 0, 3], [1, 2, 3, 0]]
        tree, points = st.realize(d)
        for i in range(4):
            for j in range(4):
                self.assertEqual(tree.dist(points[i], points[j]), d[i][j])

    def test_l1_grid(self):
        report = st.audit_semilattice(2)
        self.assertEqual(report["metric_semilattice"], [])
        self.assertEqual(report["semilinear_witness"], (0, 1, 2))
        self.assertEqual((report["four_point"]["lhs"], report["four_point"]["rhs"]), (4, 2))
        d, _ = st.l1_grid(2)
        with self.assertRaises(st.FourPointError):
            st.realize(d)


if __name__ == "__main__":
    unittest.main()
