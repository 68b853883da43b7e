import mpmath as mp
import pytest

from prismtri.shapes import Layer, PointId, Side


def exact_coords(shape, p):
    """Vertex coordinates at the current mpmath precision."""
    th = mp.pi * shape.angle_units(p) / shape.n
    return (mp.cos(th), mp.sin(th), mp.mpf(1 if p.layer is Layer.TOP else 0))


def numeric_orient(shape, *pts, dps=70):
    """Sign of det[q-p, r-p, s-p] by cofactor expansion at ``dps`` digits."""
    with mp.workdps(dps):
        P = [exact_coords(shape, p) for p in pts]
        u, v, w = ([P[i][j] - P[0][j] for j in range(3)] for i in (1, 2, 3))
        d = (u[0] * (v[1] * w[2] - v[2] * w[1])
             - u[1] * (v[0] * w[2] - v[2] * w[0])
             + u[2] * (v[0] * w[1] - v[1] * w[0]))
        if abs(d) < mp.mpf(10) ** (-(dps - 15)):
            return 0
        return 1 if d > 0 else -1


def numeric_heights(shape, chord, side, dps=50):
    """Dense rank of f(v) = cos(theta_v - phi) over opposite-layer vertices.

    phi is the direction of the chord's midpoint, which bisects the arc
    a -> b, so the sign is +1 when the positive side is that arc.
    """
    n = shape.n
    other = Layer(chord.layer).opposite
    with mp.workdps(dps):
        ua = shape.angle_units(PointId(chord.layer, chord.a))
        ub = shape.angle_units(PointId(chord.layer, chord.b))
        phi = mp.pi * mp.mpf(ua + ub) / (2 * n)
        sgn = 1 if Side(side) is Side.ARC_AB else -1
        vals = [sgn * mp.cos(mp.pi * shape.angle_units(PointId(other, v)) / n - phi) for v in range(n)]
        distinct = []
        for x in sorted(vals):
            if not distinct or x - distinct[-1] > mp.mpf(10) ** (-(dps - 10)):
                distinct.append(x)
        tol = mp.mpf(10) ** (-(dps - 10))
        return [sum(1 for d in distinct if d < x - tol) for x in vals]


@pytest.fixture
def criterion(record_property):
    """Attach a one-line detail to an acceptance criterion's summary line."""
    def note(text):
        record_property("detail", text)
    return note


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call" and outcome != "error":
                continue
            name = rep.nodeid.split("::")[-1]
            if "test_acceptance.py" not in rep.nodeid or not name.startswith("test_criterion_"):
                continue
            num = int(name.split("_")[2])
            detail = dict(getattr(rep, "user_properties", [])).get("detail", "")
            rows.append((num, "PASS" if outcome == "passed" else "FAIL", name, detail))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, status, name, detail in sorted(rows):
        line = f"criterion {num:2d} {status}  {name[len('test_criterion_00_'):]}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
