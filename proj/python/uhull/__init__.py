"""Exact convex-hull membership probabilities for uncertain points."""

from fractions import Fraction
from numbers import Rational as _Rational

from . import _uhull
from ._uhull import MonteCarloIndex, ProbabilityMap, TukeyStructure, UhullError

__all__ = [
    "Model", "ProbabilityMap", "MonteCarloIndex", "TukeyStructure", "UhullError",
    "membership", "membership_fast", "brute_force", "tukey_structure", "tukey_query",
    "tukey_depth", "beta_hull", "error_code", "locate", "mc_query", "region",
]


def _exact(x):
    """Exact text for a coordinate or probability; floats use their shortest repr."""
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a number")
    if isinstance(x, _Rational):
        return str(Fraction(x))
    if isinstance(x, float):
        return repr(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact number")


def _coords(p):
    return [_exact(c) for c in p]


def _point(coords):
    return tuple(Fraction(c) for c in coords)


def _region(raw):
    kind, vertices = raw
    return kind, [_point(v) for v in vertices]


def error_code(err):
    """The machine-readable code of a UhullError, e.g. 'DEGENERATE_SITES'."""
    return str(err).split(":", 1)[0]


class Model:
    """Builders for uncertain point sets."""

    @staticmethod
    def unipoint(points, probs):
        return _uhull.Model.unipoint([_coords(p) for p in points], [_exact(p) for p in probs])

    @staticmethod
    def multipoint(groups):
        return _uhull.Model.multipoint([[(_coords(c), _exact(p)) for c, p in g] for g in groups])

    @staticmethod
    def from_json(text):
        return _uhull.Model.from_json(text)


def membership(model, q, radial=False):
    return Fraction(_uhull.membership(model, _coords(q), radial))


def membership_fast(model, q):
    return _uhull.membership_fast(model, _coords(q))


def brute_force(model, q):
    return Fraction(_uhull.brute_force(model, _coords(q)))


def locate(pm, q):
    """(probability, face index or None when q lies on an arrangement line)."""
    prob, face = pm.locate(_coords(q))
    return Fraction(prob), face


def mc_query(index, q):
    return Fraction(index.query(_coords(q)))


def tukey_structure(model, c=8.0):
    return _uhull.tukey_structure(model, c)


def tukey_query(ts, model, q):
    ans = _uhull.tukey_query(ts, model, _coords(q))
    ans["estimate"] = Fraction(ans["estimate"])
    ans["contacts"] = [_point(p) for p in ans["contacts"]]
    return ans


def tukey_depth(q, points):
    return _uhull.tukey_depth(_coords(q), [_coords(p) for p in points])


def beta_hull(model, beta=1, oracle=False):
    """(kind, vertices) of the beta-hull; kind is one of empty, point, segment,
    polygon, unbounded, whole_plane."""
    return _region(_uhull.beta_hull(model, _exact(beta), oracle))


def region(ts):
    return _region(ts.region)
