//! Ring maps between polynomial rings and total transforms of Rees algebras.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::Poly;
use crate::rees::{ReesAlgebra, WeightedGen};
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// `k[x] -> k[x, z]`: pull back along the smooth projection `V × A^e -> V`.
    SmoothProjection,
    /// Sets designated variables to zero.
    Restriction,
    /// `x_j -> x_j + δ` with `δ` free of `x_j`-linear terms.
    TriangularAutomorphism,
    /// `x_i -> λ_i t^a`, `x_d -> t^b`.
    MonomialCurve,
    General,
}

/// A ring homomorphism `source -> target` given by the images of the source
/// variables. Geometrically it is a morphism from the target's affine space to
/// the source's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: Ring,
    target: Ring,
    images: Vec<Poly>,
    kind: MapKind,
}

impl RingMap {
    pub fn general(source: &Ring, target: &Ring, images: Vec<Poly>) -> Result<Self> {
        Self::with_kind(source, target, images, MapKind::General)
    }

    pub(crate) fn with_kind(source: &Ring, target: &Ring, images: Vec<Poly>, kind: MapKind) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::ImageCount {
                expected: source.dim(),
                got: images.len(),
            });
        }
        if source.field() != target.field() || images.iter().any(|p| **p.ring() != **target) {
            return Err(Error::RingMismatch);
        }
        Ok(RingMap {
            source: source.clone(),
            target: target.clone(),
            images,
            kind,
        })
    }

    pub fn identity(ring: &Ring) -> Self {
        let images = (0..ring.dim()).map(|i| Poly::var(ring, i)).collect();
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            images,
            kind: MapKind::General,
        }
    }

    /// Restriction to the coordinate subspace where the listed variables
    /// vanish; the target ring keeps the other variables in order.
    pub fn restriction(ring: &Ring, zero_vars: &[usize]) -> Result<Self> {
        if zero_vars.iter().any(|&i| i >= ring.dim()) {
            return Err(Error::InvalidOptions("restriction variable out of range".into()));
        }
        let keep: Vec<&String> = ring
            .vars()
            .iter()
            .enumerate()
            .filter(|(i, _)| !zero_vars.contains(i))
            .map(|(_, v)| v)
            .collect();
        if keep.is_empty() {
            return Err(Error::InvalidOptions(
                "restriction to a point leaves no variables".into(),
            ));
        }
        let target = crate::ring::PolyRing::new(ring.field(), &keep)?;
        let mut next = 0;
        let images = (0..ring.dim())
            .map(|i| {
                if zero_vars.contains(&i) {
                    Poly::zero(&target)
                } else {
                    next += 1;
                    Poly::var(&target, next - 1)
                }
            })
            .collect();
        Self::with_kind(ring, &target, images, MapKind::Restriction)
    }

    /// Inclusion `k[x] ⊂ k[x, extra]`.
    pub fn smooth_extension<S: AsRef<str>>(ring: &Ring, extra: &[S]) -> Result<Self> {
        let target = ring.extended(extra)?;
        let images = (0..ring.dim()).map(|i| Poly::var(&target, i)).collect();
        Self::with_kind(ring, &target, images, MapKind::SmoothProjection)
    }

    /// `x_j -> x_j + delta`, other variables fixed.
    pub fn coordinate_change(ring: &Ring, j: usize, delta: &Poly) -> Result<Self> {
        if j >= ring.dim() {
            return Err(Error::InvalidOptions(format!("variable index {j} out of range")));
        }
        delta.same_ring(&Poly::zero(ring))?;
        let images = (0..ring.dim())
            .map(|i| {
                let v = Poly::var(ring, i);
                if i == j {
                    v.add(delta)
                } else {
                    v
                }
            })
            .collect();
        Self::with_kind(ring, ring, images, MapKind::TriangularAutomorphism)
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        f.same_ring(&Poly::zero(&self.source))?;
        f.substitute(&self.images)
    }

    /// `next ∘ self`: first `self`, then `next`.
    pub fn then(&self, next: &RingMap) -> Result<RingMap> {
        if self.target != next.source {
            return Err(Error::RingMismatch);
        }
        let images = self.images.iter().map(|p| next.apply(p)).collect::<Result<Vec<_>>>()?;
        Self::with_kind(&self.source, &next.target, images, MapKind::General)
    }

    /// Image of a target-space point in the source space.
    pub fn map_point(&self, point: &[Scalar]) -> Result<Vec<Scalar>> {
        self.images.iter().map(|p| p.eval(point)).collect()
    }
}

/// `π^{-1}(G)`, generated by `{π^*(g_i) W^{n_i}}`.
pub fn total_transform(g: &ReesAlgebra, map: &RingMap) -> Result<ReesAlgebra> {
    if **g.ring() != *map.source {
        return Err(Error::RingMismatch);
    }
    let gens = g
        .gens()
        .iter()
        .map(|wg| Ok(WeightedGen::new(map.apply(&wg.poly)?, wg.weight)))
        .collect::<Result<Vec<_>>>()?;
    ReesAlgebra::new(&map.target, gens)
}
