"""End-to-end checks of the uhull command line tool.

Run with the tool's path in UHULL_BIN.
"""
import json
import os
import subprocess
import tempfile
import unittest
import xml.etree.ElementTree as ET

BIN = os.environ.get("UHULL_BIN", "uhull")

TRIANGLE = {
    "dimension": 2,
    "model": "unipoint",
    "points": [
        {"sites": [{"coords": ["0", "10"], "prob": "0.5"}]},
        {"sites": [{"coords": ["-10", "-5"], "prob": "1/2"}]},
        {"sites": [{"coords": ["10", "-5"], "prob": "0.5"}]},
    ],
}


def unipoint(coords, prob):
    return {
        "dimension": len(coords[0]),
        "model": "unipoint",
        "points": [{"sites": [{"coords": [str(c) for c in p], "prob": prob}]} for p in coords],
    }


class Cli(unittest.TestCase):
    def setUp(self):
        self.dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.dir.cleanup()

    def file(self, name, doc):
        path = os.path.join(self.dir.name, name)
        with open(path, "w") as f:
            json.dump(doc, f)
        return path

    def path(self, name):
        return os.path.join(self.dir.name, name)

    def run_tool(self, *args, env=None, code=0):
        full_env = dict(os.environ, **(env or {}))
        p = subprocess.run([BIN, *args], capture_output=True, text=True, env=full_env)
        self.assertEqual(p.returncode, code, p.stderr)
        return json.loads(p.stdout) if code == 0 else p

    def queries(self, *qs):
        return self.file("q.json", {"queries": [[str(c) for c in q] for q in qs]})

    def test_membership_exact_and_fast(self):
        model = self.file("m.json", TRIANGLE)
        q = self.queries((0, 0), (100, 3))
        out = self.run_tool("membership", model, q)
        self.assertEqual([r["probability"] for r in out["results"]], ["1/8", "0"])
        fast = self.run_tool("membership", "--fast", model, q)
        self.assertAlmostEqual(fast["results"][0]["probability"], 0.125, delta=1e-9)

    def test_membership_degenerate_exit(self):
        p = self.run_tool("membership", self.file("m.json", TRIANGLE), self.queries((0, -5)), code=3)
        self.assertIn("DEGENERATE", p.stderr)
        self.assertIn("sites 1 and 2", p.stderr)
        self.assertEqual(p.stdout, "")

    def test_validation_exit(self):
        bad = dict(TRIANGLE, points=[{"sites": [{"coords": ["0", "1"], "prob": "2"}]}])
        self.run_tool("membership", self.file("m.json", bad), self.queries((0, 0)), code=2)
        self.run_tool("membership", self.file("m.json", TRIANGLE), self.queries((0, 0, 0)), code=2)
        self.run_tool("membership", "--fast", "--exact", self.file("m.json", TRIANGLE), self.queries((0, 0)), code=2)

    def test_oracle_matches_and_caps(self):
        model = self.file("m.json", TRIANGLE)
        q = self.queries((0, 0), (1, 1), (50, 50))
        self.assertEqual(self.run_tool("oracle", model, q)["results"], self.run_tool("membership", model, q)["results"])
        self.assertEqual(self.run_tool("oracle", model, self.file("e.json", {"queries": []}))["results"], [])
        big = self.file("big.json", unipoint([(i, i * i) for i in range(30)], "1/2"))
        self.run_tool("oracle", big, q, code=4)
        self.run_tool("oracle", model, q, env={"UH_OUTCOME_CAP": "4"}, code=4)

    def test_dd_radial_agrees(self):
        tet = unipoint([(1, 2, 9), (-9, -4, -3), (8, -5, -2), (-1, 8, -4)], "1/2")
        model = self.file("t.json", tet)
        q = self.queries((0, 0, 0))
        self.assertEqual(self.run_tool("membership", model, q)["results"][0]["probability"], "1/16")
        self.assertEqual(self.run_tool("membership", "--dd-radial", model, q)["results"][0]["probability"], "1/16")

    def test_map_build_query_svg(self):
        model = self.file("m.json", TRIANGLE)
        stats = self.run_tool("map", model, "--build", self.path("map.json"), "--svg", self.path("map.svg"))
        self.assertEqual(stats["stats"]["faces"], 7)
        out = self.run_tool("map", "--query", self.path("map.json"), self.queries((0, 0), (0, -5)))
        self.assertEqual(out["results"][0]["probability"], "1/8")
        edge = out["results"][1]
        self.assertEqual((edge["on_skeleton"], edge["face"], edge["probability"]), (True, None, "1/4"))
        root = ET.parse(self.path("map.svg")).getroot()
        polys = [e for e in root.iter() if e.tag.endswith("polygon")]
        self.assertEqual(sum("bounded" == e.get("class").split()[-1] for e in polys), 1)
        self.run_tool("map", "--load", self.path("map.json"), "--svg", self.path("again.svg"))
        self.run_tool("map", model, code=2)

    def test_mc_deterministic(self):
        model = self.file("m.json", TRIANGLE)
        q = self.queries((0, 0), (1, 2))
        args = ["mc", model, "--eps", "0.05", "--delta", "0.01", "--seed", "42", "--query", q]
        first = self.run_tool(*args, "--build", self.path("idx.json"))
        self.assertEqual(first, self.run_tool(*args))
        self.assertEqual(first["results"], self.run_tool("mc", "--load", self.path("idx.json"), "--query", q)["results"])
        num, den = map(int, first["results"][0]["estimate"].split("/"))
        self.assertLessEqual(abs(num / den - 0.125), 0.05)

    def test_tukey_inside_is_one(self):
        pts = [(i * 37 % 101, i * i * 53 % 103) for i in range(40)]
        model = self.file("u.json", unipoint(pts, "1/2"))
        out = self.run_tool("tukey", model, "--c", "0.5", "--query", self.queries((50, 50), (1000, 7)))
        self.assertEqual(out["region"]["kind"], "polygon")
        inside, outside = out["results"]
        self.assertTrue(inside["in_region"])
        self.assertEqual(inside["estimate"], "1")
        self.assertEqual(outside["estimate"], "0")
        self.run_tool("tukey", model, "--gamma", "0.1", "--c", "50", "--query", self.queries((50, 50)), code=2)

    def test_beta_full_mass_is_hull(self):
        doc = {"dimension": 2, "model": "multipoint", "points": [
            {"sites": [{"coords": ["0", "0"], "prob": "1/2"}, {"coords": ["6", "1"], "prob": "1/2"}]},
            {"sites": [{"coords": ["2", "7"], "prob": "1"}]},
            {"sites": [{"coords": ["3", "2"], "prob": "1"}]},
        ]}
        model = self.file("b.json", doc)
        out = self.run_tool("beta", model, "--beta", "1", "--svg", self.path("b.svg"))
        self.assertEqual(out["region"]["kind"], "polygon")
        self.assertEqual(sorted(map(tuple, out["region"]["vertices"])), [("0", "0"), ("2", "7"), ("6", "1")])
        self.assertEqual(out, self.run_tool("beta", model, "--beta", "1", "--oracle"))
        self.assertEqual(self.run_tool("beta", model, "--beta", "0")["region"]["kind"], "empty")
        ET.parse(self.path("b.svg"))


if __name__ == "__main__":
    unittest.main()
