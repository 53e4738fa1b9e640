//! Middle Betti numbers of Lefschetz fibrations over `P¹` and of their fiber
//! products, together with a pencil model that derives every input from
//! Betti numbers of the ambient variety, the fiber and the base locus.
//!
//! The tensor check treats `H*(X̃)` as a graded module over `C[η]/η²`,
//! `η = f*[pt]`. Leray degenerates, so `H*(X̃) ≅ R⊗E₀ ⊕ T` where `E₀` is the
//! monodromy-invariant part of `H*(Y)` and `T` sits in the middle degree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Lefschetz fibration `X̃ → P¹` of relative dimension `m − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationFactor {
    pub m: usize,
    /// number of critical values
    pub critical: usize,
    /// Betti numbers `h^0..h^{2m−2}` of the smooth fiber
    pub fiber_betti: Vec<usize>,
    /// dimension of the vanishing part of `H^{m−1}` of the fiber
    pub vanishing: usize,
}

impl FibrationFactor {
    fn fiber(&self, k: i64) -> i64 {
        if k < 0 {
            return 0;
        }
        self.fiber_betti.get(k as usize).map_or(0, |&b| b as i64)
    }

    fn validate(&self) -> Result<()> {
        if self.m < 1 || self.fiber_betti.len() != 2 * self.m - 1 {
            return Err(Error::Input(format!(
                "fiber of relative dimension {} needs {} Betti numbers, got {}",
                self.m - 1,
                2 * self.m - 1,
                self.fiber_betti.len()
            )));
        }
        if self.vanishing > self.fiber_betti[self.m - 1] {
            return Err(Error::Input(format!(
                "vanishing dimension {} exceeds h^{}(Y) = {}",
                self.vanishing,
                self.m - 1,
                self.fiber_betti[self.m - 1]
            )));
        }
        Ok(())
    }

    /// `h^{m−1}(Y) − vanishing`, the invariant middle cohomology of the fiber.
    pub fn fixed(&self) -> usize {
        self.fiber_betti[self.m - 1] - self.vanishing
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzInput {
    pub factors: [FibrationFactor; 2],
}

/// `h^m(X̃) = d + h^m(Y) + h^{m−2}(Y) − 2·vanishing`.
pub fn lefschetz_middle_betti(f: &FibrationFactor) -> Result<i64> {
    f.validate()?;
    let m = f.m as i64;
    let b = f.critical as i64 + f.fiber(m) + f.fiber(m - 2) - 2 * f.vanishing as i64;
    if b < 0 {
        return Err(Error::Input(format!("{} critical values cannot kill {} vanishing classes", f.critical, f.vanishing)));
    }
    Ok(b)
}

/// Both readings of `h^{m₁+m₂−2}` of `X̃₁ ×_{P¹} X̃₂` when the critical values
/// are disjoint. `symmetric` pairs `d₂` with `h^{m₁−2}(Y₁)`, mirroring the
/// `d₁` term; `printed` pairs `d₂` with `h^{m₁−1}(Y₁)` instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberProductBetti {
    pub symmetric: i64,
    pub printed: i64,
}

/// `h^k(Y₁ × Y₂)` by Künneth.
fn product_betti(f1: &FibrationFactor, f2: &FibrationFactor, k: i64) -> i64 {
    (0..=k).map(|a| f1.fiber(a) * f2.fiber(k - a)).sum()
}

pub fn fiber_product_middle_betti(input: &LefschetzInput) -> Result<FiberProductBetti> {
    let [f1, f2] = &input.factors;
    f1.validate()?;
    f2.validate()?;
    let (m1, m2) = (f1.m as i64, f2.m as i64);
    let k = m1 + m2 - 2;
    let (d1, d2) = (f1.critical as i64, f2.critical as i64);
    let (v1, v2) = (f1.vanishing as i64, f2.vanishing as i64);
    // E₂^{0,k}: invariants of the product local system
    let e0 = product_betti(f1, f2, k) - v1 * f2.fiber(m2 - 1) - f1.fiber(m1 - 1) * v2 + v1 * v2;
    // E₂^{2,k−2}: the same count one Tate twist down
    let e2 = product_betti(f1, f2, k - 2) - v1 * f2.fiber(m2 - 3) - f1.fiber(m1 - 3) * v2;
    // E₂^{1,k−1}, up to the d₂ term whose reading differs
    let e1 = d1 * f2.fiber(m2 - 2) - 2 * (v1 * f2.fiber(m2 - 2) + f1.fiber(m1 - 2) * v2);
    let head = e0 + e2 + e1;
    Ok(FiberProductBetti { symmetric: head + d2 * f1.fiber(m1 - 2), printed: head + d2 * f1.fiber(m1 - 1) })
}

/// A Lefschetz pencil on a smooth `m`-fold `X`: `Y` is a smooth member and `B`
/// the base locus. The Betti numbers of `Y` and `B` are fixed by the Lefschetz
/// hyperplane theorem, Poincaré duality and the two vanishing dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilData {
    pub m: usize,
    /// `h^0..h^{2m}` of `X`
    pub ambient_betti: Vec<usize>,
    /// `h^{m−1}(Y) − h^{m−1}(X)`
    pub fiber_vanishing: usize,
    /// `h^{m−2}(B) − h^{m−2}(Y)`
    pub base_vanishing: usize,
}

fn euler(betti: &[i64]) -> i64 {
    betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b } else { -b }).sum()
}

impl PencilData {
    fn validate(&self) -> Result<()> {
        let m = self.m;
        if m < 2 || self.ambient_betti.len() != 2 * m + 1 {
            return Err(Error::Input(format!("an {m}-fold needs {} Betti numbers", 2 * m + 1)));
        }
        for k in 0..=2 * m {
            if self.ambient_betti[k] != self.ambient_betti[2 * m - k] {
                return Err(Error::Input(format!("h^{k}(X) violates Poincaré duality")));
            }
        }
        Ok(())
    }

    pub fn ambient(&self) -> Vec<i64> {
        self.ambient_betti.iter().map(|&b| b as i64).collect()
    }

    /// `h^0..h^{2m−2}` of `Y`.
    pub fn fiber_betti(&self) -> Vec<i64> {
        let m = self.m;
        let top = 2 * m - 2;
        (0..=top)
            .map(|k| {
                let j = k.min(top - k);
                self.ambient_betti[j] as i64 + if j == m - 1 { self.fiber_vanishing as i64 } else { 0 }
            })
            .collect()
    }

    /// `h^0..h^{2m−4}` of `B`.
    pub fn base_betti(&self) -> Vec<i64> {
        let m = self.m;
        let y = self.fiber_betti();
        let top = 2 * m - 4;
        (0..=top)
            .map(|k| {
                let j = k.min(top - k);
                y[j] + if j == m - 2 { self.base_vanishing as i64 } else { 0 }
            })
            .collect()
    }

    /// `h^k(X̃) = h^k(X) + h^{k−2}(B)` for the blowup of `X` along `B`.
    pub fn blowup_betti(&self) -> Vec<i64> {
        let x = self.ambient();
        let b = self.base_betti();
        (0..x.len()).map(|k| x[k] + if k >= 2 { b.get(k - 2).copied().unwrap_or(0) } else { 0 }).collect()
    }

    /// `d = h^m(X̃) − h^m(Y) − h^{m−2}(Y) + 2·vanishing`.
    pub fn critical_count(&self) -> Result<i64> {
        self.validate()?;
        let m = self.m;
        let y = self.fiber_betti();
        let d = self.blowup_betti()[m] - y[m] - y[m - 2] + 2 * self.fiber_vanishing as i64;
        if d < 0 {
            return Err(Error::Input(format!("the pencil data give a negative critical count {d}")));
        }
        Ok(d)
    }

    /// `(−1)^m (χ(X) + χ(B) − 2χ(Y))`, counting singular fibers by Euler characteristic.
    pub fn euler_critical_count(&self) -> Result<i64> {
        self.validate()?;
        let e = euler(&self.ambient()) + euler(&self.base_betti()) - 2 * euler(&self.fiber_betti());
        Ok(if self.m % 2 == 0 { e } else { -e })
    }

    pub fn factor(&self) -> Result<FibrationFactor> {
        Ok(FibrationFactor {
            m: self.m,
            critical: self.critical_count()? as usize,
            fiber_betti: self.fiber_betti().into_iter().map(|b| b as usize).collect(),
            vanishing: self.fiber_vanishing,
        })
    }

    /// The `C[η]/η²`-module shape of `H*(X̃)`: invariant fiber cohomology
    /// `E₀` by degree, and the torsion dimension in degree `m`.
    fn module(&self) -> Result<(Vec<i64>, i64)> {
        let m = self.m;
        let mut e0 = self.fiber_betti();
        e0[m - 1] -= self.fiber_vanishing as i64;
        let x = self.blowup_betti();
        let at = |k: i64| if k < 0 || k as usize >= e0.len() { 0 } else { e0[k as usize] };
        for (k, &b) in x.iter().enumerate() {
            let free = at(k as i64) + at(k as i64 - 2);
            if k != m && b != free {
                return Err(Error::Input(format!("h^{k}(X̃) = {b} but the Leray decomposition gives {free}")));
            }
        }
        let torsion = x[m] - at(m as i64) - at(m as i64 - 2);
        if torsion < 0 {
            return Err(Error::Input("negative torsion in the middle degree".into()));
        }
        Ok((e0, torsion))
    }
}

/// Dimension of `(H*(X̃₁) ⊗_R H*(X̃₂))` in degree `m₁ + m₂ − 2`, computed from the module shapes.
pub fn tensor_middle_dimension(p1: &PencilData, p2: &PencilData) -> Result<i64> {
    let (e1, t1) = p1.module()?;
    let (e2, t2) = p2.module()?;
    let (m1, m2) = (p1.m as i64, p2.m as i64);
    let deg = m1 + m2 - 2;
    let g = |e: &[i64], k: i64| if k < 0 || k as usize >= e.len() { 0 } else { e[k as usize] };
    let mut dim = 0;
    for a in 0..=deg {
        dim += g(&e1, a) * g(&e2, deg - a) + g(&e1, a) * g(&e2, deg - 2 - a);
    }
    // T₁ ⊗ T₂ lives in degree m₁ + m₂, above `deg`
    dim += t1 * g(&e2, deg - m1) + t2 * g(&e1, deg - m2);
    Ok(dim)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimCheck {
    pub critical: [i64; 2],
    pub euler_critical: [i64; 2],
    pub formula: FiberProductBetti,
    pub tensor: i64,
    pub ok: bool,
}

/// Compares the fiber-product formula against the tensor-module dimension,
/// and each critical count against its Euler-characteristic count.
pub fn fiber_product_dim_check(pencils: &[PencilData; 2]) -> Result<DimCheck> {
    let critical = [pencils[0].critical_count()?, pencils[1].critical_count()?];
    let euler_critical = [pencils[0].euler_critical_count()?, pencils[1].euler_critical_count()?];
    let input = LefschetzInput { factors: [pencils[0].factor()?, pencils[1].factor()?] };
    let formula = fiber_product_middle_betti(&input)?;
    let tensor = tensor_middle_dimension(&pencils[0], &pencils[1])?;
    let ok = critical == euler_critical && formula.symmetric == tensor;
    Ok(DimCheck { critical, euler_critical, formula, tensor, ok })
}

/// A pencil with Hodge-admissible ambient Betti numbers: odd degrees even,
/// even degrees nondecreasing up to the middle.
pub fn random_pencil(rng: &mut ChaCha8Rng, m: usize) -> PencilData {
    let mut betti = vec![0usize; 2 * m + 1];
    let mut even = 1;
    for k in 0..=m {
        betti[k] = if k % 2 == 0 {
            if k > 0 {
                even += rng.gen_range(0..3);
            }
            even
        } else {
            2 * rng.gen_range(0..3)
        };
    }
    for k in m + 1..=2 * m {
        betti[k] = betti[2 * m - k];
    }
    // hard Lefschetz on odd degrees
    for k in (3..=m).step_by(2) {
        betti[k] = betti[k].max(betti[k - 2]);
    }
    for k in m + 1..=2 * m {
        betti[k] = betti[2 * m - k];
    }
    PencilData { m, ambient_betti: betti, fiber_vanishing: rng.gen_range(0..6), base_vanishing: rng.gen_range(0..8) }
}

pub fn random_pencil_pair(seed: u64) -> [PencilData; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m1 = rng.gen_range(2..5);
    let m2 = rng.gen_range(2..5);
    [random_pencil(&mut rng, m1), random_pencil(&mut rng, m2)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane_cubic_pencil() -> PencilData {
        PencilData { m: 2, ambient_betti: vec![1, 0, 1, 0, 1], fiber_vanishing: 2, base_vanishing: 8 }
    }

    #[test]
    fn rational_elliptic_surface() {
        let p = plane_cubic_pencil();
        assert_eq!(p.critical_count().unwrap(), 12);
        assert_eq!(p.euler_critical_count().unwrap(), 12);
        assert_eq!(p.blowup_betti(), vec![1, 0, 10, 0, 1]);
        assert_eq!(lefschetz_middle_betti(&p.factor().unwrap()).unwrap(), 10);
    }

    #[test]
    fn quintic_pencil_in_p3() {
        let p = PencilData { m: 3, ambient_betti: vec![1, 0, 1, 0, 1, 0, 1], fiber_vanishing: 52, base_vanishing: 152 };
        assert_eq!(p.fiber_betti(), vec![1, 0, 53, 0, 1]);
        assert_eq!(p.base_betti(), vec![1, 152, 1]);
        assert_eq!(p.critical_count().unwrap(), 256);
        assert_eq!(p.euler_critical_count().unwrap(), 256);
    }

    #[test]
    fn trivial_fibration() {
        // P¹ × P¹ → P¹: no critical values, nothing vanishes
        let f = FibrationFactor { m: 1, critical: 0, fiber_betti: vec![1], vanishing: 0 };
        assert_eq!(lefschetz_middle_betti(&f).unwrap(), 0);
        let g = FibrationFactor { m: 2, critical: 0, fiber_betti: vec![1, 0, 1], vanishing: 0 };
        assert_eq!(lefschetz_middle_betti(&g).unwrap(), 2);
    }

    #[test]
    fn schoen_threefold() {
        let f = plane_cubic_pencil().factor().unwrap();
        let both = fiber_product_middle_betti(&LefschetzInput { factors: [f.clone(), f] }).unwrap();
        assert_eq!(both.symmetric, 19);
        assert_eq!(both.printed, 31);
        let check = fiber_product_dim_check(&[plane_cubic_pencil(), plane_cubic_pencil()]).unwrap();
        assert_eq!(check.tensor, 19);
        assert!(check.ok);
    }

    #[test]
    fn too_many_vanishing_classes_is_rejected() {
        let f = FibrationFactor { m: 2, critical: 1, fiber_betti: vec![1, 2, 1], vanishing: 2 };
        assert!(lefschetz_middle_betti(&f).is_err());
        let g = FibrationFactor { m: 2, critical: 1, fiber_betti: vec![1, 2, 1], vanishing: 3 };
        assert!(lefschetz_middle_betti(&g).is_err());
    }

    #[test]
    fn random_pencils_pass_the_dimension_check() {
        for seed in 0..50 {
            let pair = random_pencil_pair(seed);
            let check = fiber_product_dim_check(&pair).unwrap();
            assert!(check.ok, "seed {seed}: {check:?}");
        }
    }
}
