//! Built-in triangulations, each with its known Euler characteristic and
//! reduced integral homology for self-checks.

use super::complex::{build_complex, SimplicialComplex};
use super::ComplexError;
use crate::homalg::AbGroup;

/// Names accepted by [`by_name`]; `wedge_circles(k)` takes any `k >= 1`.
pub const NAMES: &[&str] =
    &["point", "s0", "circle3", "circle6", "sphere_min", "sphere_oct", "torus9", "rp2_6", "klein", "wedge_circles(k)"];

fn build(maximal: &[&[usize]]) -> SimplicialComplex {
    let v: Vec<Vec<usize>> = maximal.iter().map(|s| s.to_vec()).collect();
    build_complex(&v, 0).expect("library triangulation is valid")
}

pub fn point() -> SimplicialComplex {
    SimplicialComplex::point()
}

/// Two points.
pub fn s0() -> SimplicialComplex {
    build(&[&[0], &[1]])
}

/// Boundary of a triangle.
pub fn circle3() -> SimplicialComplex {
    build(&[&[0, 1], &[1, 2], &[0, 2]])
}

/// A hexagon.
pub fn circle6() -> SimplicialComplex {
    build(&[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]])
}

/// Boundary of the tetrahedron.
pub fn sphere_min() -> SimplicialComplex {
    build(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
}

/// Boundary of the octahedron; antipodal pairs are `{0,1}`, `{2,3}`, `{4,5}`.
pub fn sphere_oct() -> SimplicialComplex {
    let mut tris = Vec::new();
    for a in [0, 1] {
        for c in [2, 3] {
            for e in [4, 5] {
                tris.push(vec![a, c, e]);
            }
        }
    }
    build_complex(&tris, 0).expect("octahedron is valid")
}

/// The 9-vertex torus on the grid `Z/3 x Z/3`, vertex `3i + j`.
pub fn torus9() -> SimplicialComplex {
    let v = |i: usize, j: usize| 3 * (i % 3) + (j % 3);
    let mut tris = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            tris.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            tris.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    build_complex(&tris, 0).expect("torus is valid")
}

/// The 6-vertex real projective plane.
pub fn rp2_6() -> SimplicialComplex {
    build(&[
        &[0, 1, 2],
        &[0, 2, 3],
        &[0, 3, 4],
        &[0, 4, 5],
        &[0, 1, 5],
        &[1, 2, 4],
        &[2, 3, 5],
        &[1, 3, 4],
        &[2, 4, 5],
        &[1, 3, 5],
    ])
}

/// An 8-vertex Klein bottle (16 triangles, 24 edges).
pub fn klein() -> SimplicialComplex {
    build(&[
        &[0, 1, 4],
        &[0, 1, 7],
        &[0, 2, 5],
        &[0, 2, 6],
        &[0, 3, 4],
        &[0, 3, 5],
        &[0, 6, 7],
        &[1, 2, 4],
        &[1, 2, 7],
        &[2, 3, 6],
        &[2, 3, 7],
        &[2, 4, 5],
        &[3, 4, 7],
        &[3, 5, 6],
        &[4, 5, 7],
        &[5, 6, 7],
    ])
}

/// `k` triangle circles glued at vertex 0; circle `i` uses vertices
/// `0, 2i + 1, 2i + 2`.
pub fn wedge_circles(k: usize) -> SimplicialComplex {
    if k == 0 {
        return point();
    }
    let mut edges = Vec::new();
    for i in 0..k {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        edges.extend([vec![0, a], vec![a, b], vec![0, b]]);
    }
    build_complex(&edges, 0).expect("wedge is valid")
}

/// Looks up a library space; `wedge_circles(k)` is parsed for its `k`.
pub fn by_name(name: &str) -> Result<SimplicialComplex, ComplexError> {
    Ok(match name {
        "point" => point(),
        "s0" => s0(),
        "circle3" => circle3(),
        "circle6" => circle6(),
        "sphere_min" => sphere_min(),
        "sphere_oct" => sphere_oct(),
        "torus9" => torus9(),
        "rp2_6" => rp2_6(),
        "klein" => klein(),
        other => {
            let k = other
                .strip_prefix("wedge_circles(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|k| k.trim().parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| ComplexError::UnknownSpace(other.to_string()))?;
            wedge_circles(k)
        }
    })
}

/// Euler characteristic and reduced integral homology in degrees
/// `0..=dim` that a library space must have.
pub fn expected_invariants(name: &str) -> Option<(i64, Vec<AbGroup>)> {
    let z = AbGroup::integers;
    let o = AbGroup::zero;
    Some(match name {
        "point" => (1, vec![o()]),
        "s0" => (2, vec![z()]),
        "circle3" | "circle6" => (0, vec![o(), z()]),
        "sphere_min" | "sphere_oct" => (2, vec![o(), o(), z()]),
        "torus9" => (0, vec![o(), AbGroup::free(2), z()]),
        "rp2_6" => (1, vec![o(), AbGroup::cyclic(2), o()]),
        "klein" => (0, vec![o(), z().direct_sum(&AbGroup::cyclic(2)), o()]),
        other => {
            let k = other.strip_prefix("wedge_circles(")?.strip_suffix(')')?.trim().parse::<usize>().ok()?;
            (1 - k as i64, vec![o(), AbGroup::free(k)])
        }
    })
}

/// Checks a library space against [`expected_invariants`].
pub fn self_check(name: &str) -> Result<(), String> {
    let k = by_name(name).map_err(|e| e.to_string())?;
    let (chi, homology) = expected_invariants(name).ok_or_else(|| format!("no invariants recorded for {name}"))?;
    if k.euler_characteristic() != chi {
        return Err(format!("{name}: Euler characteristic {} != {chi}", k.euler_characteristic()));
    }
    let h = super::reduced_chains(&k).integral_homology(k.dim()).map_err(|e| e.to_string())?;
    if h != homology {
        return Err(format!("{name}: reduced homology {h:?} differs from {homology:?}"));
    }
    Ok(())
}
