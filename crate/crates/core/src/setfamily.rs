//! Covering families: for all disjoint `A, B` with `|A| ≤ a`, `|B| ≤ b`, some
//! member `S` has `A ⊆ S` and `S ∩ B = ∅`.

use std::collections::HashSet;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracle::{binomial_prefix, for_each_combination, for_each_subset_upto};

/// Subsets of the universe `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    universe: usize,
    members: Vec<FixedBitSet>,
}

impl SetFamily {
    /// Duplicates are dropped, first occurrence kept.
    pub fn new(universe: usize, members: impl IntoIterator<Item = FixedBitSet>) -> Self {
        let mut seen = HashSet::new();
        let members = members
            .into_iter()
            .map(|mut s| {
                s.grow(universe);
                s
            })
            .filter(|s| seen.insert(s.clone()))
            .collect();
        Self { universe, members }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[FixedBitSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn set_of(n: usize, items: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.extend(items);
    s
}

fn complement(n: usize, s: &FixedBitSet) -> FixedBitSet {
    let mut c = s.clone();
    c.toggle_range(..n);
    c
}

/// Every subset with at most `a` elements.
pub fn small_subsets(n: usize, a: usize) -> SetFamily {
    let mut out = Vec::new();
    let _ = for_each_subset_upto::<()>(n, a, |s| {
        out.push(set_of(n, s.iter().copied()));
        ControlFlow::Continue(())
    });
    SetFamily::new(n, out)
}

/// The complement of every subset with at most `b` elements.
pub fn small_complements(n: usize, b: usize) -> SetFamily {
    let mut out = Vec::new();
    let _ = for_each_subset_upto::<()>(n, b, |s| {
        out.push(complement(n, &set_of(n, s.iter().copied())));
        ControlFlow::Continue(())
    });
    SetFamily::new(n, out)
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Splitter parameters `(P, r)`: a prime `P > max(n, 2ab + 1)` and `r = 2ab + 1`.
fn splitter_params(n: usize, a: usize, b: usize) -> (usize, usize) {
    let r = 2 * a * b + 1;
    let mut p = n.max(r) + 1;
    while !is_prime(p) {
        p += 1;
    }
    (p, r)
}

/// Splitter construction. For a multiplier `c`, `h_c(x) = ((c·x) mod P) mod r`.
/// For fixed `A, B` with `|A||B| ≤ ab`, each pair `x ∈ A, y ∈ B` collides for
/// fewer than `2(P-1)/r` multipliers, so some `c` keeps `h_c(A)` and
/// `h_c(B)` apart. Members are preimages `h_c⁻¹(Q)` with `|Q| ≤ a`, or
/// complements of preimages with `|Q| ≤ b` when `b < a`.
pub fn splitter_family(n: usize, a: usize, b: usize) -> SetFamily {
    let (p, r) = splitter_params(n, a, b);
    let small = a.min(b);
    let mut out = Vec::new();
    for c in 1..p {
        let bucket: Vec<usize> = (0..n).map(|x| (c * x % p) % r).collect();
        let _ = for_each_subset_upto::<()>(r, small, |q| {
            let pre = set_of(n, (0..n).filter(|&x| q.contains(&bucket[x])));
            out.push(if a <= b { pre } else { complement(n, &pre) });
            ControlFlow::Continue(())
        });
    }
    SetFamily::new(n, out)
}

fn splitter_size(n: usize, a: usize, b: usize) -> u128 {
    let (p, r) = splitter_params(n, a, b);
    (p as u128 - 1).saturating_mul(binomial_prefix(r, a.min(b)))
}

/// Number of members [`build_family`] generates before deduplication.
pub fn family_size(n: usize, a: usize, b: usize) -> u128 {
    let (a, b) = (a.min(n), b.min(n));
    if a == 0 || b == 0 {
        return 1;
    }
    binomial_prefix(n, a)
        .min(binomial_prefix(n, b))
        .min(splitter_size(n, a, b))
}

/// A deterministic covering family: the smallest of all `≤ a`-subsets, all
/// complements of `≤ b`-subsets, and the splitter construction.
pub fn build_family(n: usize, a: usize, b: usize) -> SetFamily {
    let (a, b) = (a.min(n), b.min(n));
    if a == 0 {
        return SetFamily::new(n, [FixedBitSet::with_capacity(n)]);
    }
    if b == 0 {
        return SetFamily::new(n, [complement(n, &FixedBitSet::with_capacity(n))]);
    }
    let direct = binomial_prefix(n, a);
    let comp = binomial_prefix(n, b);
    let split = splitter_size(n, a, b);
    if direct <= comp && direct <= split {
        small_subsets(n, a)
    } else if comp <= split {
        small_complements(n, b)
    } else {
        splitter_family(n, a, b)
    }
}

/// `rounds` random sets, each element joining with probability `a/(a+b)`.
/// Not guaranteed to cover; check with [`verify_family`].
pub fn build_family_random(n: usize, a: usize, b: usize, rounds: usize, seed: u64) -> SetFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = if a + b == 0 { 1.0 } else { a as f64 / (a + b) as f64 };
    let members: Vec<FixedBitSet> = (0..rounds)
        .map(|_| set_of(n, (0..n).filter(|_| rng.gen_bool(p))))
        .collect();
    SetFamily::new(n, members)
}

/// Exhaustive covering check over every `B` with `|B| ≤ b` and every `A`
/// of size `min(a, n - |B|)` disjoint from it. Refuses universes over 128
/// elements or more than `cap` pairs.
pub fn verify_family(f: &SetFamily, a: usize, b: usize, cap: u128) -> Result<bool> {
    let n = f.universe();
    if n > 128 {
        return Err(Error::Precondition(format!("universe of {n} elements is too large to verify")));
    }
    let pairs = binomial_prefix(n, b).saturating_mul(binomial_prefix(n, a));
    if pairs > cap {
        return Err(Error::SizeGuard { candidates: pairs, cap });
    }
    let masks: Vec<u128> = f
        .members()
        .iter()
        .map(|s| s.ones().fold(0u128, |m, i| m | 1 << i))
        .collect();
    let flow = for_each_subset_upto(n, b, |bs| {
        let bmask = bs.iter().fold(0u128, |m, &i| m | 1 << i);
        let rest: Vec<usize> = (0..n).filter(|i| bmask >> i & 1 == 0).collect();
        for_each_combination(rest.len(), a.min(rest.len()), |as_| {
            let amask = as_.iter().fold(0u128, |m, &i| m | 1 << rest[i]);
            if masks.iter().any(|&s| s & amask == amask && s & bmask == 0) {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(())
            }
        })
    });
    Ok(flow.is_continue())
}
