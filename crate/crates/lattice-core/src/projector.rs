use num_complex::Complex64;

use crate::error::LatticeError;
use crate::lattice::{Lattice, PosetSpec};
use crate::ortho::OrthoMap;

/// Tolerance on principal angles when testing subspace equality and
/// orthogonality.
pub const ANGLE_TOLERANCE: f64 = 1e-9;

/// Rays beyond this count abort the closure as NotClosed.
const MAX_RAYS: usize = 24;

type Ray = Vec<Complex64>;

fn inner(u: &Ray, v: &Ray) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn norm(u: &Ray) -> f64 {
    inner(u, u).re.sqrt()
}

fn normalize(u: &Ray) -> Ray {
    let n = norm(u);
    u.iter().map(|c| c / n).collect()
}

fn same_ray(u: &Ray, v: &Ray) -> bool {
    // unit rays are equal iff |<u,v>| = 1 up to the angle tolerance
    (inner(u, v).norm() - 1.0).abs() < ANGLE_TOLERANCE
}

fn orthogonal(u: &Ray, v: &Ray) -> bool {
    inner(u, v).norm() < ANGLE_TOLERANCE
}

/// Complex cross product yielding the ray orthogonal to two dim-3 rays.
fn cross_conj(u: &Ray, v: &Ray) -> Ray {
    vec![
        (u[1] * v[2] - u[2] * v[1]).conj(),
        (u[2] * v[0] - u[0] * v[2]).conj(),
        (u[0] * v[1] - u[1] * v[0]).conj(),
    ]
}

/// Builds the subspace-inclusion lattice generated by the given rays in
/// dimension 2 or 3, closed under orthocomplement (and, in dim 3, under
/// cross-product completion of orthogonal ray pairs), with orthogonality as
/// the orthocomplementation.
pub fn projector_lattice(dim: usize, rays: &[Vec<Complex64>]) -> Result<(Lattice, OrthoMap), LatticeError> {
    assert!(dim == 2 || dim == 3, "dim must be 2 or 3");
    let mut closed: Vec<Ray> = Vec::new();
    for (i, r) in rays.iter().enumerate() {
        assert_eq!(r.len(), dim, "ray has wrong dimension");
        if norm(r) < ANGLE_TOLERANCE {
            return Err(LatticeError::DegenerateRay(i));
        }
        let r = normalize(r);
        if !closed.iter().any(|s| same_ray(s, &r)) {
            closed.push(r);
        }
    }

    if dim == 2 {
        // each ray brings its orthogonal partner
        let mut i = 0;
        while i < closed.len() {
            let u = &closed[i];
            let perp = normalize(&vec![-u[1].conj(), u[0].conj()]);
            if !closed.iter().any(|s| same_ray(s, &perp)) {
                closed.push(perp);
            }
            if closed.len() > MAX_RAYS {
                return Err(LatticeError::NotClosed);
            }
            i += 1;
        }
    } else {
        // dim 3: complete every orthogonal pair with the cross product
        let mut grew = true;
        while grew {
            grew = false;
            let snapshot = closed.clone();
            for i in 0..snapshot.len() {
                for j in (i + 1)..snapshot.len() {
                    if orthogonal(&snapshot[i], &snapshot[j]) {
                        let w = normalize(&cross_conj(&snapshot[i], &snapshot[j]));
                        if !closed.iter().any(|s| same_ray(s, &w)) {
                            closed.push(w);
                            grew = true;
                        }
                    }
                }
            }
            if closed.len() > MAX_RAYS {
                return Err(LatticeError::NotClosed);
            }
        }
    }

    let ray_id = |i: usize| format!("r{i}");
    let plane_id = |i: usize| format!("p{i}");
    let mut elements = vec!["0".to_string()];
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut ortho = std::collections::BTreeMap::new();
    ortho.insert("0".to_string(), "1".to_string());
    ortho.insert("1".to_string(), "0".to_string());

    for i in 0..closed.len() {
        elements.push(ray_id(i));
        covers.push(("0".to_string(), ray_id(i)));
    }
    if dim == 2 {
        for i in 0..closed.len() {
            covers.push((ray_id(i), "1".to_string()));
            let j = closed
                .iter()
                .position(|s| orthogonal(s, &closed[i]))
                .expect("dim-2 closure contains the orthogonal partner");
            ortho.insert(ray_id(i), ray_id(j));
        }
    } else {
        // one plane per ray: its orthocomplement, ordered by inclusion
        for i in 0..closed.len() {
            elements.push(plane_id(i));
            covers.push((plane_id(i), "1".to_string()));
            ortho.insert(ray_id(i), plane_id(i));
            ortho.insert(plane_id(i), ray_id(i));
        }
        for (i, u) in closed.iter().enumerate() {
            for (j, v) in closed.iter().enumerate() {
                // ray u lies in the plane normal to v iff u is orthogonal to v
                if orthogonal(u, v) {
                    covers.push((ray_id(i), plane_id(j)));
                }
            }
        }
    }
    elements.push("1".to_string());

    let lattice = Lattice::build(&PosetSpec { elements, covers })?;
    let ortho = OrthoMap::from_pairs(&lattice, &ortho)?;
    Ok((lattice, ortho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn one_qubit_basis_gives_b2() {
        let (l, om) = projector_lattice(2, &[vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert_eq!(l.len(), 4);
        let r = classify(&l, Some(&om)).unwrap();
        assert!(r.is_boolean);
    }

    #[test]
    fn two_conjugate_bases_give_mo2() {
        let zero = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let plus = vec![c(S, 0.0), c(S, 0.0)];
        let (l, om) = projector_lattice(2, &[zero, plus]).unwrap();
        assert_eq!(l.len(), 6);
        assert_eq!(l.atoms().len(), 4);
        let r = classify(&l, Some(&om)).unwrap();
        assert!(r.is_orthomodular);
        assert!(!r.is_distributive);
    }

    #[test]
    fn dim3_pair_completes_to_full_basis() {
        let e1 = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let e2 = vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let (l, om) = projector_lattice(3, &[e1, e2]).unwrap();
        // 0, three atoms, three planes, 1
        assert_eq!(l.len(), 8);
        assert_eq!(l.atoms().len(), 3);
        let r = classify(&l, Some(&om)).unwrap();
        assert!(r.is_orthomodular);
    }

    #[test]
    fn degenerate_ray_rejected() {
        let z = vec![c(0.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            projector_lattice(2, &[z]),
            Err(LatticeError::DegenerateRay(0))
        ));
    }
}
