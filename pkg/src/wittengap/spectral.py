"""Discrete drift Laplacians on weighted 1- and 2-complexes.

A weighted complex carries an edge conductance c_e > 0 and a vertex mass
m_i > 0.  The stiffness form sum_e c_e (u_i - u_j)^2 against the mass
inner product defines a generalized eigenvalue problem whose continuum
limit is the drift Laplacian Delta - grad(phi).grad in the measure
exp(-phi) dv: multiplying conductances by exp(-(phi_i + phi_j)/2) and
masses by exp(-phi_i) is exactly the discrete change of measure
(see ``apply_weight``).

Constructors cover the two geometric families used by the verification
suite: uniform circles (second differences along arclength) and
icospheres (cotangent edge weights with barycentric lumped mass).
``lambda1_witten`` computes the bottom of the nonzero spectrum, densely
up to 3000 vertices and by Lanczos iteration with full
reorthogonalization and explicit deflation beyond that.
``graph_diameter`` estimates the intrinsic diameter from shortest paths
with chord-length edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import sparse
from scipy.linalg import eigh, eigh_tridiagonal
from scipy.sparse.csgraph import connected_components, dijkstra

from .bounds import BoundInput, andrews_ni_bound, futaki_sano_bound, sup_bound_closed
from .report import VerificationReport, make_report
from .sturm import EXPONENT_GUARD, MeasureUnderflowError

__all__ = [
    "WeightedComplex",
    "SpectralResult",
    "LanczosConvergenceError",
    "build_weighted_circle",
    "build_icosphere",
    "apply_weight",
    "witten_apply",
    "stiffness_matrix",
    "lambda1_witten",
    "graph_diameter",
    "sphere_height_case",
    "write_off",
    "write_eigenvector_csv",
]

DENSE_CUTOFF = 3000


class LanczosConvergenceError(RuntimeError):
    """Lanczos hit its iteration cap; ``best_ritz`` carries the estimate."""

    def __init__(self, message: str, best_ritz: float):
        super().__init__(message)
        self.best_ritz = best_ritz


@dataclass
class WeightedComplex:
    """Vertices, weighted edges, and vertex masses of one discrete space.

    ``edges`` is an (E, 2) integer array with each edge listed once;
    ``faces`` is kept for triangulated surfaces so they can be exported
    and so curvature-weight constructors can be audited.  ``phi`` records
    the accumulated potential so that re-weighting composes.
    """

    vertices: np.ndarray
    edges: np.ndarray
    conductances: np.ndarray
    masses: np.ndarray
    phi: np.ndarray
    label: str = ""
    faces: np.ndarray | None = None

    def __post_init__(self) -> None:
        n = self.vertices.shape[0]
        if self.vertices.ndim != 2 or self.vertices.shape[1] != 3:
            raise ValueError("vertices must be an (n, 3) array")
        if self.edges.ndim != 2 or self.edges.shape[1] != 2:
            raise ValueError("edges must be an (E, 2) array")
        if (self.edges < 0).any() or (self.edges >= n).any():
            raise ValueError("edge endpoints out of range")
        if (self.edges[:, 0] == self.edges[:, 1]).any():
            raise ValueError("self-loops are not allowed")
        if self.conductances.shape != (self.edges.shape[0],):
            raise ValueError("one conductance per edge required")
        if self.masses.shape != (n,) or self.phi.shape != (n,):
            raise ValueError("masses and phi must have one entry per vertex")
        if not (self.conductances > 0.0).all():
            raise ValueError("conductances must be strictly positive")
        if not (self.masses > 0.0).all():
            raise ValueError("masses must be strictly positive")

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    def is_connected(self) -> bool:
        adj = _adjacency(self, self.conductances)
        return connected_components(adj, directed=False, return_labels=False) == 1


@dataclass
class SpectralResult:
    """Bottom of the nonzero spectrum of one weighted complex.

    ``eigenvalues`` holds the first few nonzero eigenvalues in ascending
    order (``lambda1`` is its first entry), ``eigenvector`` the
    mass-normalized first eigenvector, ``residual`` its eigen-residual in
    the mass pairing, ``multiplicity_gap`` the relative jump from the
    lambda1 cluster to the next distinct level, and ``diameter_estimate``
    the shortest-path diameter of the complex.
    """

    lambda1: float
    multiplicity_gap: float
    eigenvector: np.ndarray
    residual: float
    diameter_estimate: float
    eigenvalues: np.ndarray = field(default_factory=lambda: np.empty(0))


def _adjacency(complex_: WeightedComplex, weights: np.ndarray) -> sparse.csr_matrix:
    i, j = complex_.edges[:, 0], complex_.edges[:, 1]
    n = complex_.n_vertices
    return sparse.coo_matrix(
        (np.concatenate([weights, weights]), (np.concatenate([i, j]), np.concatenate([j, i]))),
        shape=(n, n),
    ).tocsr()


def stiffness_matrix(complex_: WeightedComplex) -> sparse.csr_matrix:
    """Sparse graph Laplacian sum_e c_e (e_i - e_j)(e_i - e_j)^T."""
    i, j = complex_.edges[:, 0], complex_.edges[:, 1]
    c = complex_.conductances
    n = complex_.n_vertices
    rows = np.concatenate([i, j, i, j])
    cols = np.concatenate([j, i, i, j])
    vals = np.concatenate([-c, -c, c, c])
    return sparse.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()


def witten_apply(complex_: WeightedComplex, u: np.ndarray) -> np.ndarray:
    """Apply the generalized operator Mass^{-1} Stiffness to u.

    Assembled edge-wise, so a constant input maps to exactly zero: each
    edge contributes c_e (u_i - u_j) and the differences vanish before
    any rounding.  The sign convention makes the operator positive
    semidefinite; on a weighted curve or surface it discretizes
    -(Delta u - grad(phi) . grad u).
    """
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (complex_.n_vertices,):
        raise ValueError("u must have one entry per vertex")
    i, j = complex_.edges[:, 0], complex_.edges[:, 1]
    flux = complex_.conductances * (u[i] - u[j])
    out = np.zeros(complex_.n_vertices)
    np.add.at(out, i, flux)
    np.subtract.at(out, j, flux)
    return out / complex_.masses


def apply_weight(complex_: WeightedComplex, phi_values: np.ndarray) -> WeightedComplex:
    """Change of measure by exp(-phi): reweight conductances and masses.

    Edge conductances pick up exp(-(phi_i + phi_j)/2) (geometric midpoint
    rule) and vertex masses exp(-phi_i).  Adding a constant to phi scales
    both sides of the pencil equally, so the spectrum is invariant under
    phi -> phi + c.
    """
    phi_values = np.asarray(phi_values, dtype=np.float64)
    if phi_values.shape != (complex_.n_vertices,):
        raise ValueError("phi_values must have one entry per vertex")
    if not np.isfinite(phi_values).all():
        raise ValueError("phi_values must be finite")
    if np.abs(phi_values).max(initial=0.0) > EXPONENT_GUARD:
        raise MeasureUnderflowError(
            f"max |phi| = {np.abs(phi_values).max():.1f} exceeds {EXPONENT_GUARD:.0f}; "
            "the weight exp(-phi) is not representable in float64"
        )
    i, j = complex_.edges[:, 0], complex_.edges[:, 1]
    edge_factor = np.exp(-0.5 * (phi_values[i] + phi_values[j]))
    return replace(
        complex_,
        conductances=complex_.conductances * edge_factor,
        masses=complex_.masses * np.exp(-phi_values),
        phi=complex_.phi + phi_values,
    )


def build_weighted_circle(n: int, radius: float = 1.0, phi_fn=None) -> WeightedComplex:
    """Uniform n-point circle of given radius in the z = 0 plane.

    The unweighted complex has conductance 1/h and mass h with
    h = 2 pi radius / n, the standard second-difference discretization of
    d^2/ds^2 along arclength.  ``phi_fn`` maps the (n, 3) vertex array to
    per-vertex potential values; when given, the weight is applied via
    ``apply_weight``.
    """
    if n < 8:
        raise ValueError(f"need at least 8 vertices on a circle, got {n}")
    if not (math.isfinite(radius) and radius > 0.0):
        raise ValueError(f"radius must be positive, got {radius!r}")
    angle = 2.0 * math.pi * np.arange(n) / n
    vertices = np.column_stack(
        [radius * np.cos(angle), radius * np.sin(angle), np.zeros(n)]
    )
    edges = np.column_stack([np.arange(n), (np.arange(n) + 1) % n]).astype(np.int64)
    h = 2.0 * math.pi * radius / n
    base = WeightedComplex(
        vertices=vertices,
        edges=edges,
        conductances=np.full(n, 1.0 / h),
        masses=np.full(n, h),
        phi=np.zeros(n),
        label=f"circle-n={n}-r={radius:g}",
    )
    if phi_fn is None:
        return base
    return apply_weight(base, np.asarray(phi_fn(vertices), dtype=np.float64))


# vertices and faces of the unit icosahedron
_ICO_T = (1.0 + math.sqrt(5.0)) / 2.0
_ICO_VERTS = np.array(
    [
        [-1, _ICO_T, 0], [1, _ICO_T, 0], [-1, -_ICO_T, 0], [1, -_ICO_T, 0],
        [0, -1, _ICO_T], [0, 1, _ICO_T], [0, -1, -_ICO_T], [0, 1, -_ICO_T],
        [_ICO_T, 0, -1], [_ICO_T, 0, 1], [-_ICO_T, 0, -1], [-_ICO_T, 0, 1],
    ],
    dtype=np.float64,
)
_ICO_FACES = np.array(
    [
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ],
    dtype=np.int64,
)


def _subdivide(vertices: np.ndarray, faces: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One 4-to-1 refinement, new vertices projected back to the sphere."""
    verts = list(map(tuple, vertices))
    midpoint_cache: dict[tuple[int, int], int] = {}

    def midpoint(a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        idx = midpoint_cache.get(key)
        if idx is None:
            p = 0.5 * (vertices[a] + vertices[b])
            p = p / np.linalg.norm(p)
            idx = len(verts)
            verts.append(tuple(p))
            midpoint_cache[key] = idx
        return idx

    new_faces = []
    for a, b, c in faces:
        ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
        new_faces.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]])
    return np.array(verts, dtype=np.float64), np.array(new_faces, dtype=np.int64)


def build_icosphere(subdivisions: int) -> WeightedComplex:
    """Geodesic unit sphere with cotangent weights and lumped mass.

    Starts from the icosahedron, subdivides ``subdivisions`` times
    (10 * 4^s + 2 vertices), and projects every vertex to the unit
    sphere.  Edge conductance is the usual cotangent weight
    (cot(alpha) + cot(beta))/2 over the two opposite angles; the vertex
    mass is one third of the adjacent triangle area.  All triangles of
    this family are acute, so the conductances stay positive.
    """
    if not 0 <= subdivisions <= 7:
        raise ValueError(f"subdivisions must be in 0..7, got {subdivisions}")
    vertices = _ICO_VERTS / np.linalg.norm(_ICO_VERTS[0])
    faces = _ICO_FACES
    for _ in range(subdivisions):
        vertices, faces = _subdivide(vertices, faces)

    n = vertices.shape[0]
    corner = vertices[faces]  # (F, 3, 3)
    # cot at corner k faces edge (k+1, k+2)
    cots = np.empty_like(faces, dtype=np.float64)
    for k in range(3):
        u = corner[:, (k + 1) % 3] - corner[:, k]
        v = corner[:, (k + 2) % 3] - corner[:, k]
        cross = np.cross(u, v)
        cots[:, k] = (u * v).sum(axis=1) / np.linalg.norm(cross, axis=1)
    area = 0.5 * np.linalg.norm(
        np.cross(corner[:, 1] - corner[:, 0], corner[:, 2] - corner[:, 0]), axis=1
    )

    pair = np.concatenate([faces[:, [1, 2]], faces[:, [2, 0]], faces[:, [0, 1]]])
    pair.sort(axis=1)
    weight = 0.5 * cots.T.reshape(-1)
    edges, inverse = np.unique(pair, axis=0, return_inverse=True)
    conductances = np.zeros(edges.shape[0])
    np.add.at(conductances, inverse, weight)

    masses = np.zeros(n)
    np.add.at(masses, faces.reshape(-1), np.repeat(area / 3.0, 3))

    return WeightedComplex(
        vertices=vertices,
        edges=edges.astype(np.int64),
        conductances=conductances,
        masses=masses,
        phi=np.zeros(n),
        label=f"icosphere-sub={subdivisions}",
        faces=faces,
    )


def _symmetrized_operator(complex_: WeightedComplex):
    """Matvec for T = M^{-1/2} S M^{-1/2} plus the unit kernel vector."""
    S = stiffness_matrix(complex_)
    inv_sqrt = 1.0 / np.sqrt(complex_.masses)
    kernel = np.sqrt(complex_.masses)
    kernel = kernel / np.linalg.norm(kernel)

    def matvec(x: np.ndarray) -> np.ndarray:
        return inv_sqrt * (S @ (inv_sqrt * x))

    return matvec, kernel, inv_sqrt


def _lanczos_smallest(matvec, n: int, deflate: list[np.ndarray], tol: float, max_iter: int, rng):
    """Smallest Ritz pair of the operator restricted off span(deflate).

    Plain Lanczos with full reorthogonalization; the deflation set is
    projected out of every iterate, so converged directions and the
    kernel never re-enter.  Returns (theta, vector in symmetrized
    coordinates).  Raises LanczosConvergenceError at the iteration cap;
    exhausting the deflated subspace (breakdown) counts as convergence.
    """

    def project(x: np.ndarray) -> np.ndarray:
        for d in deflate:
            x = x - d * (d @ x)
        return x

    def ritz(j: int, beta_j: float) -> tuple[float, np.ndarray, float]:
        a = np.array(alphas[: j + 1])
        b = np.array(betas[:j])
        theta, s = eigh_tridiagonal(a, b, select="i", select_range=(0, 0))
        # beta |last Ritz component| bounds the eigen-residual
        return float(theta[0]), s[:, 0], beta_j * abs(float(s[-1, 0]))

    q = project(rng.standard_normal(n))
    q /= np.linalg.norm(q)
    Q = np.zeros((n, max_iter))
    alphas: list[float] = []
    betas: list[float] = []
    theta_prev = math.inf
    for j in range(max_iter):
        Q[:, j] = q
        w = project(matvec(q))
        alphas.append(float(q @ w))
        w -= alphas[-1] * q
        if j > 0:
            w -= betas[-1] * Q[:, j - 1]
        # full reorthogonalization, twice for safety; the deflation set is
        # re-projected here too, else rounding-level kernel components grow
        # geometrically through the three-term recurrence
        for _ in range(2):
            w -= Q[:, : j + 1] @ (Q[:, : j + 1].T @ w)
            w = project(w)
        beta = float(np.linalg.norm(w))
        breakdown = beta < 1e-13
        if breakdown or (j >= 4 and (j % 5 == 0 or j == max_iter - 1)):
            theta, s, bound = ritz(j, beta)
            stagnated = abs(theta_prev - theta) <= tol * max(1.0, abs(theta))
            if breakdown or (bound <= tol * max(1.0, abs(theta)) and stagnated):
                v = project(Q[:, : j + 1] @ s)
                return theta, v / np.linalg.norm(v)
            theta_prev = theta
        betas.append(beta)
        q = w / beta
    theta, _, bound = ritz(len(alphas) - 1, betas[-1])
    raise LanczosConvergenceError(
        f"no convergence after {len(alphas)} iterations "
        f"(best Ritz value {theta:.12g}, residual bound {bound:.3e}, tol {tol:.1e})",
        best_ritz=theta,
    )


def lambda1_witten(
    complex_: WeightedComplex,
    n_eigs: int = 6,
    dense_cutoff: int = DENSE_CUTOFF,
    tol: float = 1e-10,
    max_iter: int = 600,
    seed: int = 20260816,
) -> SpectralResult:
    """First nonzero eigenvalue of the weighted complex, with diagnostics.

    Solves the generalized problem S v = lam M v restricted off the
    constant kernel.  Up to ``dense_cutoff`` vertices this is a dense
    symmetric eigensolve; beyond, Lanczos with full reorthogonalization
    runs once per requested eigenvalue, explicitly deflating the kernel
    and every converged eigenvector, so repeated eigenvalues are
    recovered one copy at a time.  The iteration is sequential and
    seeded, hence deterministic.
    """
    n = complex_.n_vertices
    if not complex_.is_connected():
        raise ValueError("complex is disconnected; the drift Laplacian has extra kernel")
    n_eigs = min(n_eigs, n - 1)
    matvec, kernel, inv_sqrt = _symmetrized_operator(complex_)

    if n <= dense_cutoff:
        S = stiffness_matrix(complex_).toarray()
        T = inv_sqrt[:, None] * S * inv_sqrt[None, :]
        T = 0.5 * (T + T.T)
        values, vectors = eigh(T, subset_by_index=(0, n_eigs))
        zero_scale = abs(values[0]) / max(1.0, abs(values[-1]))
        if zero_scale > 1e-8:
            raise RuntimeError(f"kernel eigenvalue did not separate: {values[:2]}")
        eigenvalues = np.asarray(values[1:], dtype=np.float64)
        y1 = vectors[:, 1]
    else:
        rng = np.random.default_rng(seed)
        deflate = [kernel]
        eigenvalues = np.empty(n_eigs)
        y1 = None
        for k in range(n_eigs):
            theta, y = _lanczos_smallest(matvec, n, deflate, tol, max_iter, rng)
            eigenvalues[k] = theta
            deflate.append(y)
            if k == 0:
                y1 = y
        order = np.argsort(eigenvalues)
        eigenvalues = eigenvalues[order]
        if order[0] != 0:
            y1 = deflate[1 + int(order[0])]

    # back to pencil coordinates, mass-orthogonal to constants
    v = inv_sqrt * y1
    weights = complex_.masses
    v = v - (weights @ v) / weights.sum()
    v /= math.sqrt(float(v @ (weights * v)))
    anchor = int(np.argmax(np.abs(v)))
    if v[anchor] < 0.0:
        v = -v

    lam1 = float(eigenvalues[0])
    r = witten_apply(complex_, v) * weights - lam1 * weights * v
    residual = math.sqrt(float(r @ (r / weights)))

    cluster = eigenvalues <= lam1 * 1.05 + 1e-300
    beyond = eigenvalues[~cluster]
    if beyond.size:
        multiplicity_gap = float((beyond[0] - lam1) / lam1) if lam1 > 0 else math.inf
    else:
        multiplicity_gap = 0.0

    return SpectralResult(
        lambda1=lam1,
        multiplicity_gap=multiplicity_gap,
        eigenvector=v,
        residual=residual,
        diameter_estimate=graph_diameter(complex_),
        eigenvalues=eigenvalues,
    )


def graph_diameter(complex_: WeightedComplex, max_sources: int = 200) -> float:
    """Shortest-path diameter with ambient chord lengths as edge lengths.

    All-pairs for complexes up to 2000 vertices; beyond, the max runs
    over ``max_sources`` farthest-point-sampled source vertices starting
    from vertex 0, which is deterministic.
    """
    i, j = complex_.edges[:, 0], complex_.edges[:, 1]
    lengths = np.linalg.norm(complex_.vertices[i] - complex_.vertices[j], axis=1)
    adj = _adjacency(complex_, lengths)
    n = complex_.n_vertices
    if not complex_.is_connected():
        raise ValueError("diameter of a disconnected complex is infinite")
    if n <= 2000:
        dist = dijkstra(adj, directed=False)
        return float(dist.max())
    best = 0.0
    dist_to_set = np.full(n, np.inf)
    source = 0
    for _ in range(min(max_sources, n)):
        dist = dijkstra(adj, directed=False, indices=source)
        best = max(best, float(dist.max()))
        dist_to_set = np.minimum(dist_to_set, dist)
        source = int(np.argmax(dist_to_set))
    return best


def sphere_height_case(a: float, subdivisions: int = 5) -> VerificationReport:
    """Certify the gap bound for the unit sphere weighted by phi = a z.

    The Hessian of the height function z on the unit sphere is -z g, so
    Ric + Hess(a z) = (1 - a z) g >= (1 - |a|) g: curvature constant
    K = 1 - |a| with diameter pi.  The discrete lambda_1 of the weighted
    icosphere must dominate the closed-form bound at that (K, pi), up to
    the stated mesh tolerance.
    """
    if not (math.isfinite(a) and abs(a) < 1.0):
        raise ValueError(f"height coefficient a must satisfy |a| < 1, got {a!r}")
    mesh = build_icosphere(subdivisions)
    weighted = apply_weight(mesh, a * mesh.vertices[:, 2])
    result = lambda1_witten(weighted)
    K = 1.0 - abs(a)
    inp = BoundInput(K=K, d=math.pi)
    bound = sup_bound_closed(inp)
    tol = 1e-2 * max(1.0, result.lambda1)
    notes = [
        "K = 1 - |a| from Hess(z) = -z g on the unit sphere; diameter pi is exact",
        f"icosphere with {mesh.n_vertices} vertices, cotangent weights",
        f"graph diameter estimate {result.diameter_estimate:.6f}",
    ]
    return make_report(
        case_id=f"sphere-height-a={a:g}",
        inputs={"a": a, "K": K, "d": math.pi, "subdivisions": float(subdivisions)},
        computed={
            "lambda1": result.lambda1,
            "residual": result.residual,
            "multiplicity_gap": result.multiplicity_gap,
        },
        bounds={
            "sup_closed": bound,
            "futaki_sano": futaki_sano_bound(inp),
            "andrews_ni": andrews_ni_bound(inp),
        },
        margins={"gap_vs_sup_closed": result.lambda1 - bound},
        tolerances={"gap_vs_sup_closed": tol},
        notes=notes,
    )


def write_off(complex_: WeightedComplex, path) -> None:
    """Write vertices and faces in OFF format (0 faces for 1-complexes)."""
    faces = complex_.faces if complex_.faces is not None else np.empty((0, 3), dtype=np.int64)
    with open(path, "w") as fh:
        fh.write("OFF\n")
        fh.write(f"{complex_.n_vertices} {faces.shape[0]} 0\n")
        for x, y, z in complex_.vertices:
            fh.write(f"{x:.17g} {y:.17g} {z:.17g}\n")
        for a, b, c in faces:
            fh.write(f"3 {a} {b} {c}\n")


def write_eigenvector_csv(complex_: WeightedComplex, u: np.ndarray, path) -> None:
    """Write per-vertex eigenvector samples as CSV."""
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (complex_.n_vertices,):
        raise ValueError("u must have one entry per vertex")
    with open(path, "w") as fh:
        fh.write("vertex_index,x,y,z,phi,u\n")
        for idx in range(complex_.n_vertices):
            x, y, z = complex_.vertices[idx]
            fh.write(f"{idx},{x:.17g},{y:.17g},{z:.17g},{complex_.phi[idx]:.17g},{u[idx]:.17g}\n")
