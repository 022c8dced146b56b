//! Coefficient algebras along coordinate retractions, and the
//! one-dimensional invariant `λ` that decides integral closure on a line.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{Poly, VanishingOrder};
use crate::rees::{ReesAlgebra, WeightedGen};
use crate::ring::ExpVector;

/// `Z = V(x_1, ..., x_h)`; the retraction projects onto the trailing
/// `d - h` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Split {
    pub h: usize,
}

impl Split {
    pub fn new(h: usize) -> Self {
        Split { h }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.h == 0 || self.h >= dim {
            return Err(Error::InvalidSplit { h: self.h, dim });
        }
        Ok(())
    }

    /// Multi-indices supported on the cut-out variables with `|α| < bound`,
    /// padded to the full ring dimension.
    fn transverse_indices(&self, dim: usize, bound: u32) -> Vec<ExpVector> {
        if bound == 0 {
            return Vec::new();
        }
        ExpVector::all_up_to(self.h, bound - 1)
            .into_iter()
            .map(|a| {
                let mut v = a.0;
                v.resize(dim, 0);
                ExpVector(v)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Recipe {
    /// `a_α W^{N - |α|}`.
    F1Prime,
    /// `a_α W^n` for every `0 < n <= N - |α|`.
    F1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffAlgebra {
    pub algebra: ReesAlgebra,
    pub recipe: Recipe,
    pub split: Split,
}

/// Expands each generator in the cut-out variables,
/// `g = Σ_α x^α a_α(x_{h+1}, ..., x_d)`, and lists the coefficients with
/// `|α| < N`. `a_α` is the restriction of `Δ^α g` to `Z`.
pub fn coefficient_algebra(g: &ReesAlgebra, split: Split, recipe: Recipe) -> Result<CoeffAlgebra> {
    let ring = g.ring();
    split.validate(ring.dim())?;
    let target = ring.trailing(split.h)?;
    let mut gens: Vec<WeightedGen> = Vec::new();
    for wg in g.gens() {
        for alpha in split.transverse_indices(ring.dim(), wg.weight) {
            let a = wg.poly.hasse(&alpha)?.restrict_leading(split.h, &target)?;
            if a.is_zero() {
                continue;
            }
            let top = wg.weight - alpha.degree();
            match recipe {
                Recipe::F1Prime => gens.push(WeightedGen::new(a, top)),
                Recipe::F1 => gens.extend((1..=top).map(|w| WeightedGen::new(a.clone(), w))),
            }
        }
    }
    Ok(CoeffAlgebra {
        algebra: ReesAlgebra::new(&target, gens)?,
        recipe,
        split,
    })
}

/// An exact nonnegative rational or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LambdaValue {
    Finite(BigRational),
    Infinite,
}

impl LambdaValue {
    pub fn ratio(num: u32, den: u32) -> Self {
        LambdaValue::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn from_order(order: VanishingOrder, weight: u32) -> Self {
        match order {
            VanishingOrder::Finite(v) => LambdaValue::ratio(v, weight),
            VanishingOrder::Infinite => LambdaValue::Infinite,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, LambdaValue::Infinite)
    }
}

impl fmt::Display for LambdaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaValue::Finite(r) => write!(f, "{r}"),
            LambdaValue::Infinite => write!(f, "inf"),
        }
    }
}

fn require_dim(dim: usize, expected: usize) -> Result<()> {
    if dim != expected {
        return Err(Error::NeedsDimension { expected, got: dim });
    }
    Ok(())
}

/// `min_{|α| < N} ν(a_α) / (N - |α|)` for a split leaving one variable.
pub fn sl(g: &Poly, n: u32, split: Split) -> Result<LambdaValue> {
    let ring = g.ring();
    split.validate(ring.dim())?;
    require_dim(ring.dim() - split.h, 1)?;
    if n == 0 {
        return Err(Error::ZeroWeight);
    }
    let target = ring.trailing(split.h)?;
    let mut best = LambdaValue::Infinite;
    for alpha in split.transverse_indices(ring.dim(), n) {
        let a = g.hasse(&alpha)?.restrict_leading(split.h, &target)?;
        best = best.min(LambdaValue::from_order(a.order(), n - alpha.degree()));
    }
    Ok(best)
}

/// `λ = min_i ν(g_i) / n_i` at the origin of a one-variable algebra; every
/// graded piece is generated by products and orders add, so this is the
/// infimum of `ν(I_r) / r` over all `r`.
pub fn lambda(g: &ReesAlgebra) -> Result<LambdaValue> {
    require_dim(g.ring().dim(), 1)?;
    Ok(g.gens()
        .iter()
        .map(|wg| LambdaValue::from_order(wg.poly.order(), wg.weight))
        .min()
        .unwrap_or(LambdaValue::Infinite))
}

/// Whether `t^n W^m` is integral over `g`, i.e. `n/m >= λ`.
pub fn integral_member_1d(n: u32, m: u32, g: &ReesAlgebra) -> Result<bool> {
    if m == 0 {
        return Err(Error::ZeroWeight);
    }
    Ok(match lambda(g)? {
        LambdaValue::Infinite => false,
        lam => LambdaValue::ratio(n, m) >= lam,
    })
}

pub fn same_closure_1d(a: &ReesAlgebra, b: &ReesAlgebra) -> Result<bool> {
    Ok(lambda(a)? == lambda(b)?)
}
