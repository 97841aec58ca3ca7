use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{catalog_scheme, entries, numeric_params};
use crate::matcore::factor_product;
use crate::pathmodel::{Orientation, WeightRule, WeightScheme};
use crate::polyalg::MultiPoly;
use crate::riordan::ConstantScheme;

/// One scheme of the test battery.
#[derive(Clone, Debug)]
pub struct BatteryScheme {
    pub name: String,
    pub scheme: WeightScheme,
    pub orientation: Orientation,
    pub symbolic: bool,
    /// `(alphas, betas)` with `sum a_i z^i = prod (alpha_j z + beta_j)`, when known.
    pub factors: Option<(Vec<MultiPoly>, Vec<MultiPoly>)>,
}

impl BatteryScheme {
    /// The constant form, with its factor form attached when known.
    pub fn constant(&self) -> Option<ConstantScheme> {
        let cs = ConstantScheme::from_scheme(&self.scheme)?;
        let factors = self.factors.clone().or_else(|| match cs.ell {
            0 => Some((vec![], vec![])),
            1 => Some((vec![cs.a[1].clone()], vec![cs.a[0].clone()])),
            _ => None,
        });
        match factors {
            Some((al, be)) if cs.ell == al.len() => Some(cs.clone().with_factors(al, be).unwrap_or(cs)),
            _ => Some(cs),
        }
    }
}

fn symbol_times(rng: &mut ChaCha8Rng, name: &str) -> MultiPoly {
    let c: i64 = rng.gen_range(1..=2);
    MultiPoly::constant(c) * MultiPoly::named(name)
}

/// Every catalog entry at its integer parameters, then three random schemes
/// with indeterminate weights drawn from `seed`. The random ones take `a`
/// from a product of linear factors, so their path matrices are totally
/// positive in the coefficientwise sense.
pub fn battery(seed: u64) -> Vec<BatteryScheme> {
    let mut out = Vec::new();
    for e in entries() {
        let params = numeric_params(e.name).expect("listed entry");
        let (scheme, orientation) = catalog_scheme(e.name, &params).expect("numeric parameters are valid");
        out.push(BatteryScheme { name: e.name.to_string(), scheme, orientation, symbolic: false, factors: None });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in 0..3 {
        let t = rng.gen_range(0..=2usize);
        let ell = rng.gen_range(1..=3usize);
        let alphas: Vec<MultiPoly> = (1..=ell).map(|j| symbol_times(&mut rng, &format!("u{j}"))).collect();
        let betas: Vec<MultiPoly> = (1..=ell).map(|j| symbol_times(&mut rng, &format!("v{j}"))).collect();
        let a = factor_product(&alphas, &betas).into_iter().map(WeightRule::constant).collect();
        // the last one lets b depend on the height
        let b = if r == 2 { WeightRule::indexed("g") } else { WeightRule::constant(symbol_times(&mut rng, "g")) };
        out.push(BatteryScheme {
            name: format!("random_{r}"),
            scheme: WeightScheme::new(t, a, b).expect("nonempty"),
            orientation: Orientation::M,
            symbolic: true,
            factors: Some((alphas, betas)),
        });
    }
    out
}

/// Integer sequences of length at most 6: even draws are products of
/// `(c z + d)` with small nonnegative `c, d`, odd draws have independent
/// entries in `0..6`.
pub fn random_sequences(seed: u64, count: usize) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<i64> = if out.len() % 2 == 0 {
            let deg = rng.gen_range(1..=5usize);
            let mut p = vec![1i64];
            for _ in 0..deg {
                let (c, d) = (rng.gen_range(1..=2i64), rng.gen_range(0..=3i64));
                let mut next = vec![0i64; p.len() + 1];
                for (i, x) in p.iter().enumerate() {
                    next[i] += x * d;
                    next[i + 1] += x * c;
                }
                p = next;
            }
            p
        } else {
            let len = rng.gen_range(1..=6usize);
            (0..len).map(|_| rng.gen_range(0..6i64)).collect()
        };
        if v.iter().any(|&c| c != 0) {
            out.push(v);
        }
    }
    out
}
