//! True-domain geometry: tagged polygons, closest-point projection, and the
//! per-edge distance-vector data that drives the shifted boundary operator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::path::Path;

use crate::fem::quadrature::EdgeRule;
use crate::mesh::Mesh;
use crate::{Error, Result};

/// Plain 2D vector / point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product (signed parallelogram area).
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec2 {
        let n = self.norm();
        Vec2::new(self.x / n, self.y / n)
    }

    /// Clockwise perpendicular; for a CCW-traversed boundary this is the
    /// outward direction.
    pub fn perp_cw(self) -> Vec2 {
        Vec2::new(self.y, -self.x)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, s: f64) -> Vec2 {
        Vec2::new(self.x / s, self.y / s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Boundary condition kind carried by each polygon segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryTag {
    Dirichlet,
    Neumann,
}

/// Result of projecting a point onto the domain boundary.
#[derive(Clone, Copy, Debug)]
pub struct Projection {
    /// Closest point on the boundary.
    pub point: Vec2,
    /// Index of the segment the closest point lies on (ties broken by the
    /// lowest index).
    pub segment: usize,
    pub distance: f64,
}

/// The true domain: a simple closed polygon, counterclockwise, with a
/// boundary tag on each segment (`verts[i] -> verts[i+1]`).
#[derive(Clone, Debug)]
pub struct DomainGeometry {
    verts: Vec<Vec2>,
    tags: Vec<BoundaryTag>,
}

impl DomainGeometry {
    pub fn new(verts: Vec<Vec2>, tags: Vec<BoundaryTag>) -> Result<Self> {
        if verts.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 vertices, got {}",
                verts.len()
            )));
        }
        if tags.len() != verts.len() {
            return Err(Error::InvalidPolygon(format!(
                "{} vertices but {} segment tags",
                verts.len(),
                tags.len()
            )));
        }
        let geom = DomainGeometry { verts, tags };
        if geom.signed_area() <= 0.0 {
            return Err(Error::InvalidPolygon(
                "polygon must be counterclockwise with positive area".into(),
            ));
        }
        Ok(geom)
    }

    /// Axis-aligned rectangle `[x0,x1] x [y0,y1]`, all segments Dirichlet.
    pub fn rectangle(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if x1 <= x0 || y1 <= y0 {
            return Err(Error::DegenerateBbox {
                width: x1 - x0,
                height: y1 - y0,
            });
        }
        Self::new(
            vec![
                Vec2::new(x0, y0),
                Vec2::new(x1, y0),
                Vec2::new(x1, y1),
                Vec2::new(x0, y1),
            ],
            vec![BoundaryTag::Dirichlet; 4],
        )
    }

    /// The benchmark right trapezoid: bottom base `[0, b2]` on y=0, top base
    /// `[0, b1]` on y=1, vertical left leg on x=0, slanted right side.
    ///
    /// Segments: 0 bottom, 1 slant, 2 top, 3 left leg.
    pub fn trapezoid(b1: f64, b2: f64, height: f64) -> Result<Self> {
        Self::new(
            vec![
                Vec2::new(0.0, 0.0),
                Vec2::new(b2, 0.0),
                Vec2::new(b1, height),
                Vec2::new(0.0, height),
            ],
            vec![BoundaryTag::Dirichlet; 4],
        )
    }

    /// Benchmark trapezoid with the left leg tagged Neumann (the Stokes
    /// traction boundary).
    pub fn trapezoid_neumann_left(b1: f64, b2: f64, height: f64) -> Result<Self> {
        let mut g = Self::trapezoid(b1, b2, height)?;
        g.tags[3] = BoundaryTag::Neumann;
        Ok(g)
    }

    /// Parse a plain-text polygon: one `x y tag` line per vertex, where the
    /// tag (`D` or `N`) applies to the segment leaving that vertex. `#`
    /// starts a comment.
    pub fn from_polygon_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_polygon_text(&text)
    }

    pub fn from_polygon_text(text: &str) -> Result<Self> {
        let mut verts = Vec::new();
        let mut tags = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let bad = || Error::InvalidPolygon(format!("line {}: expected `x y tag`", lineno + 1));
            let x: f64 = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let y: f64 = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let tag = match it.next().ok_or_else(bad)? {
                "D" | "d" | "dirichlet" => BoundaryTag::Dirichlet,
                "N" | "n" | "neumann" => BoundaryTag::Neumann,
                other => {
                    return Err(Error::InvalidPolygon(format!(
                        "line {}: unknown tag {:?}",
                        lineno + 1,
                        other
                    )))
                }
            };
            verts.push(Vec2::new(x, y));
            tags.push(tag);
        }
        Self::new(verts, tags)
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.verts
    }

    pub fn segment_count(&self) -> usize {
        self.verts.len()
    }

    pub fn segment(&self, i: usize) -> (Vec2, Vec2) {
        (self.verts[i], self.verts[(i + 1) % self.verts.len()])
    }

    pub fn tag(&self, segment: usize) -> BoundaryTag {
        self.tags[segment]
    }

    pub fn has_neumann(&self) -> bool {
        self.tags.contains(&BoundaryTag::Neumann)
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.verts.len();
        let mut a = 0.0;
        for i in 0..n {
            a += self.verts[i].cross(self.verts[(i + 1) % n]);
        }
        a / 2.0
    }

    /// Characteristic length `l = meas(domain)^(1/2)`.
    pub fn char_length(&self) -> f64 {
        self.signed_area().abs().sqrt()
    }

    /// Outward unit normal of segment `i`.
    pub fn segment_normal(&self, i: usize) -> Vec2 {
        let (a, b) = self.segment(i);
        (b - a).normalized().perp_cw()
    }

    /// Dilate the polygon about its centroid by `1 + eps`. Used for the
    /// fitted-limit experiments where the boundary is nudged outward so
    /// cells touching it stay inside.
    pub fn grown(&self, eps: f64) -> Self {
        let n = self.verts.len() as f64;
        let c = self
            .verts
            .iter()
            .fold(Vec2::ZERO, |acc, &v| acc + v)
            / n;
        let verts = self
            .verts
            .iter()
            .map(|&v| c + (v - c) * (1.0 + eps))
            .collect();
        DomainGeometry {
            verts,
            tags: self.tags.clone(),
        }
    }

    /// Point-in-polygon with an inclusive band: anything within `tol` of the
    /// boundary counts as inside.
    pub fn inside(&self, p: Vec2, tol: f64) -> bool {
        if self.distance_to_boundary(p) <= tol {
            return true;
        }
        // even-odd ray cast along +x
        let n = self.verts.len();
        let mut crossings = 0;
        for i in 0..n {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % n];
            if (a.y > p.y) != (b.y > p.y) {
                let x_hit = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if x_hit > p.x {
                    crossings += 1;
                }
            }
        }
        crossings % 2 == 1
    }

    pub fn distance_to_boundary(&self, p: Vec2) -> f64 {
        self.project(p).distance
    }

    /// Closest-point projection onto the boundary. Total over all of R^2;
    /// ties between segments resolve to the lowest segment index.
    pub fn project(&self, p: Vec2) -> Projection {
        let mut best = Projection {
            point: Vec2::ZERO,
            segment: 0,
            distance: f64::INFINITY,
        };
        for i in 0..self.segment_count() {
            let (a, b) = self.segment(i);
            let ab = b - a;
            let t = ((p - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
            let q = a + ab * t;
            let d = (p - q).norm();
            if d < best.distance * (1.0 - 1e-14) {
                best = Projection {
                    point: q,
                    segment: i,
                    distance: d,
                };
            }
        }
        best
    }

    /// True-boundary unit normal at a projected point. Off corners this is
    /// the segment normal; at a corner (shared endpoint) the two adjacent
    /// segment normals are averaged and renormalized. Only the audit uses
    /// this; the scheme itself never needs `n`.
    pub fn normal_at_projection(&self, proj: &Projection) -> Vec2 {
        let (a, b) = self.segment(proj.segment);
        let n = self.verts.len();
        let corner_tol = 1e-12 * self.char_length().max(1.0);
        let at = |v: Vec2| (proj.point - v).norm() <= corner_tol;
        if at(a) {
            let prev = (proj.segment + n - 1) % n;
            (self.segment_normal(prev) + self.segment_normal(proj.segment)).normalized()
        } else if at(b) {
            let next = (proj.segment + 1) % n;
            (self.segment_normal(proj.segment) + self.segment_normal(next)).normalized()
        } else {
            self.segment_normal(proj.segment)
        }
    }
}

/// One quadrature point on a surrogate boundary edge together with its
/// distance vector to the true boundary.
#[derive(Clone, Copy, Debug)]
pub struct EdgeQuadPoint {
    /// Position on the surrogate edge.
    pub x: Vec2,
    /// Quadrature weight scaled by the edge length.
    pub weight: f64,
    /// Distance vector `d = M_h(x) - x`; exactly zero when the point sits on
    /// the true boundary (within the zero threshold).
    pub d: Vec2,
    /// Unit direction `nu = d / |d|`, `None` when `d` is flagged zero.
    pub nu: Option<Vec2>,
    /// Segment of the true boundary the point projects onto.
    pub segment: usize,
}

/// Everything the assemblers need about one surrogate boundary edge.
#[derive(Clone, Debug)]
pub struct EdgeBoundaryData {
    /// Owning cell in the surrogate mesh.
    pub cell: usize,
    /// Local edge index in the owning cell (edge k runs from local vertex k
    /// to k+1 mod 3).
    pub local_edge: usize,
    /// Outward unit normal of the surrogate edge.
    pub normal: Vec2,
    pub length: f64,
    /// `h_perp = area(cell) / length(edge)`.
    pub h_perp: f64,
    pub tag: BoundaryTag,
    pub points: Vec<EdgeQuadPoint>,
}

/// Builds the per-edge shifted-boundary data for every surrogate boundary
/// edge: quadrature positions, distance vectors, and the Dirichlet/Neumann
/// tag inherited through the map from the true boundary.
///
/// An edge is tagged Dirichlet only if all its quadrature points project
/// onto Dirichlet segments. Mixed edges are resolved by majority vote (ties
/// go to Dirichlet) and reported through the returned warning count.
pub fn build_edge_data(
    geom: &DomainGeometry,
    surrogate: &Mesh,
    rule: &EdgeRule,
) -> Result<(Vec<EdgeBoundaryData>, usize)> {
    let zero_tol = 1e-12 * geom.char_length();
    let mut out = Vec::with_capacity(surrogate.boundary_edges().len());
    let mut mixed_warnings = 0usize;
    for &(cell, local_edge) in surrogate.boundary_edges() {
        let (a, b) = surrogate.edge_endpoints(cell, local_edge);
        let t = b - a;
        let length = t.norm();
        let normal = t.normalized().perp_cw();
        let h_perp = surrogate.cell_area(cell) / length;
        let mut points = Vec::with_capacity(rule.len());
        let mut n_dirichlet = 0usize;
        for (s, w) in rule.points() {
            let x = a + t * s;
            let proj = geom.project(x);
            let (d, nu) = if proj.distance < zero_tol {
                (Vec2::ZERO, None)
            } else {
                let d = proj.point - x;
                (d, Some(d.normalized()))
            };
            if geom.tag(proj.segment) == BoundaryTag::Dirichlet {
                n_dirichlet += 1;
            }
            points.push(EdgeQuadPoint {
                x,
                weight: w * length,
                d,
                nu,
                segment: proj.segment,
            });
        }
        let tag = if n_dirichlet == rule.len() {
            BoundaryTag::Dirichlet
        } else if n_dirichlet == 0 {
            BoundaryTag::Neumann
        } else {
            mixed_warnings += 1;
            if 2 * n_dirichlet >= rule.len() {
                BoundaryTag::Dirichlet
            } else {
                BoundaryTag::Neumann
            }
        };
        out.push(EdgeBoundaryData {
            cell,
            local_edge,
            normal,
            length,
            h_perp,
            tag,
            points,
        });
    }
    Ok((out, mixed_warnings))
}

/// Outcome of the geometric-resolution audit over the surrogate boundary.
#[derive(Clone, Copy, Debug, Default)]
pub struct NormalAudit {
    /// Edges with `nu . n_tilde <= 0` at some quadrature point.
    pub violating: usize,
    pub total: usize,
    /// Assumption-1 diagnostic `max |d| / h_T` over boundary cells.
    pub max_d_over_ht: f64,
}

impl NormalAudit {
    pub fn violating_fraction(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.violating as f64 / self.total as f64
        }
    }
}

/// Counts surrogate edges violating the old geometric-resolution condition
/// `nu . n_tilde > 0` and reports the `|d|/h_T` diagnostic. Violations are
/// permitted by the method; this is purely a report.
///
/// Edges whose distance vectors are all zero (body-fitted) never violate.
/// The comparison uses an inclusive tolerance so edges that are exactly
/// orthogonal to their projection direction count deterministically.
pub fn audit_normals(
    geom: &DomainGeometry,
    surrogate: &Mesh,
    edges: &[EdgeBoundaryData],
) -> NormalAudit {
    const TIE_TOL: f64 = 1e-12;
    let mut audit = NormalAudit {
        total: edges.len(),
        ..Default::default()
    };
    for e in edges {
        let h_t = surrogate.metrics(e.cell).h_t;
        let mut violates = false;
        for qp in &e.points {
            audit.max_d_over_ht = audit.max_d_over_ht.max(qp.d.norm() / h_t);
            if let Some(nu) = qp.nu {
                let true_n = geom.normal_at_projection(&Projection {
                    point: qp.x + qp.d,
                    segment: qp.segment,
                    distance: qp.d.norm(),
                });
                if nu.dot(e.normal) <= TIE_TOL || true_n.dot(e.normal) <= TIE_TOL {
                    violates = true;
                }
            }
        }
        if violates {
            audit.violating += 1;
        }
    }
    audit
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trap() -> DomainGeometry {
        DomainGeometry::trapezoid(0.6, 0.4, 1.0).unwrap()
    }

    #[test]
    fn trapezoid_area_and_orientation() {
        let g = trap();
        assert!((g.signed_area() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn project_point_on_boundary_is_fixed() {
        let g = trap();
        let p = Vec2::new(0.2, 0.0);
        let pr = g.project(p);
        assert!(pr.distance < 1e-15);
        assert!((pr.point - p).norm() < 1e-15);
    }

    #[test]
    fn project_below_bottom_base() {
        let g = trap();
        let pr = g.project(Vec2::new(0.2, -0.1));
        assert!((pr.point - Vec2::new(0.2, 0.0)).norm() < 1e-14);
        assert_eq!(pr.segment, 0);
        assert!((pr.distance - 0.1).abs() < 1e-14);
    }

    #[test]
    fn projection_is_idempotent() {
        let g = trap();
        for &p in &[
            Vec2::new(0.55, 0.1),
            Vec2::new(-0.3, 0.5),
            Vec2::new(0.3, 1.7),
            Vec2::new(0.45, 0.2),
        ] {
            let p1 = g.project(p);
            let p2 = g.project(p1.point);
            assert!((p2.point - p1.point).norm() < 1e-12, "at {p}");
            assert!(p2.distance < 1e-12);
        }
    }

    /// Brute-force oracle: projection distance equals the min over densely
    /// sampled boundary points, and corner ties resolve to the lowest index.
    #[test]
    fn project_matches_dense_sampling_oracle() {
        let g = trap();
        let samples: Vec<(Vec2, usize)> = (0..g.segment_count())
            .flat_map(|s| {
                let (a, b) = g.segment(s);
                (0..=2000).map(move |k| (a + (b - a) * (k as f64 / 2000.0), s))
            })
            .collect();
        for &p in &[
            Vec2::new(0.37, -0.05),
            Vec2::new(0.62, 0.48),
            Vec2::new(0.1, 0.5),
            Vec2::new(0.7, 1.1),
        ] {
            let pr = g.project(p);
            let brute = samples
                .iter()
                .map(|&(q, _)| (p - q).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(pr.distance <= brute + 1e-6, "at {p}");
        }
        // equidistant from bottom (0) and left (3): corner (0,0), lowest tag
        let pr = g.project(Vec2::new(-0.1, -0.1));
        assert_eq!(pr.segment, 0);
        assert!((pr.point - Vec2::new(0.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn grown_polygon_contains_original_boundary() {
        let g = trap();
        let big = g.grown(1e-3);
        for i in 0..g.segment_count() {
            let (a, b) = g.segment(i);
            assert!(big.inside(a, 0.0));
            assert!(big.inside((a + b) * 0.5, 0.0));
        }
    }

    #[test]
    fn polygon_file_roundtrip() {
        let text = "0 0 D\n1 0 D # bottom-right\n1 1 N\n0 1 D\n";
        let g = DomainGeometry::from_polygon_text(text).unwrap();
        assert_eq!(g.segment_count(), 4);
        assert_eq!(g.tag(2), BoundaryTag::Neumann);
        assert!((g.signed_area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_clockwise_polygon() {
        let r = DomainGeometry::new(
            vec![
                Vec2::new(0.0, 0.0),
                Vec2::new(0.0, 1.0),
                Vec2::new(1.0, 1.0),
            ],
            vec![BoundaryTag::Dirichlet; 3],
        );
        assert!(r.is_err());
    }

    #[test]
    fn corner_normal_is_averaged() {
        let g = trap();
        // project from below-left of the origin corner
        let pr = g.project(Vec2::new(-0.2, -0.2));
        let n = g.normal_at_projection(&pr);
        let expect = (Vec2::new(0.0, -1.0) + Vec2::new(-1.0, 0.0)).normalized();
        assert!((n - expect).norm() < 1e-12);
    }
}
