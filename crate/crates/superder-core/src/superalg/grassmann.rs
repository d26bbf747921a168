//! Grassmann algebras on anticommuting generators and Grassmann envelopes.
//!
//! The Grassmann algebra on N generators has basis xi_I indexed by subsets
//! I of {1..N} (stored as bitmasks), parity |I| mod 2, and product
//! xi_I * xi_J = sign(I, J) xi_{I u J}, zero when the subsets intersect.
//! The envelope of a superalgebra A is the purely even algebra spanned by
//! xi_I (x) b_j with |I| = parity(b_j) mod 2; its product is computed
//! componentwise inside the tensor product, which is what makes every
//! Koszul sign come out of the generator bookkeeping automatically.

use std::collections::HashMap;

use crate::scalars::{Field, Scalar};

use super::{Parity, Superalgebra};

/// Sign of xi_I * xi_J as +1/-1: the parity of the number of generator
/// transpositions needed to sort the concatenation. Assumes disjoint masks.
fn concat_sign(i_mask: u64, j_mask: u64) -> i64 {
    debug_assert_eq!(i_mask & j_mask, 0);
    let mut inversions = 0u32;
    let mut j = j_mask;
    while j != 0 {
        let low = j.trailing_zeros();
        // generators of I strictly above this one must hop over it
        inversions += (i_mask >> (low + 1)).count_ones();
        j &= j - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn mask_label(mask: u64) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut s = String::new();
    let mut m = mask;
    while m != 0 {
        let low = m.trailing_zeros();
        s.push_str(&format!("g{}", low + 1));
        m &= m - 1;
    }
    s
}

fn mask_parity(mask: u64) -> Parity {
    if mask.count_ones() % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// The Grassmann algebra on `n_generators` anticommuting generators.
pub fn grassmann_algebra(field: Field, n_generators: usize) -> Superalgebra {
    assert!(n_generators <= 16, "Grassmann algebra beyond desk scale");
    let size = 1usize << n_generators;
    let parity: Vec<Parity> = (0..size).map(|m| mask_parity(m as u64)).collect();
    let labels: Vec<String> = (0..size).map(|m| mask_label(m as u64)).collect();
    let mut entries = Vec::new();
    for i in 0..size as u64 {
        for j in 0..size as u64 {
            if i & j != 0 {
                continue;
            }
            let sign = concat_sign(i, j);
            entries.push(((i as usize), (j as usize), (i | j) as usize, field.from_i64(sign)));
        }
    }
    Superalgebra::new(field, parity, labels, entries).expect("grassmann table is well formed")
}

/// The Grassmann envelope of `a` over a finite set of generators, keeping
/// the (mask, base index) coordinates addressable.
#[derive(Debug, Clone)]
pub struct GrassmannEnvelope {
    algebra: Superalgebra,
    n_generators: usize,
    pairs: Vec<(u64, usize)>,
    index: HashMap<(u64, usize), usize>,
}

impl GrassmannEnvelope {
    pub fn new(a: &Superalgebra, n_generators: usize) -> GrassmannEnvelope {
        assert!(n_generators <= 16, "envelope beyond desk scale");
        let size = 1u64 << n_generators;
        let mut pairs = Vec::new();
        let mut index = HashMap::new();
        for j in 0..a.dim() {
            for mask in 0..size {
                if mask_parity(mask) == a.parity(j) {
                    index.insert((mask, j), pairs.len());
                    pairs.push((mask, j));
                }
            }
        }
        let parity = vec![Parity::Even; pairs.len()];
        let labels: Vec<String> = pairs
            .iter()
            .map(|(mask, j)| format!("{}|{}", mask_label(*mask), a.label(*j)))
            .collect();
        let mut entries = Vec::new();
        for (i, j, k, c) in a.table_entries() {
            for &(mi, bi) in &pairs {
                if bi != i {
                    continue;
                }
                for &(mj, bj) in &pairs {
                    if bj != j || mi & mj != 0 {
                        continue;
                    }
                    let sign = concat_sign(mi, mj);
                    let coeff = if sign == 1 { c.clone() } else { -c };
                    let row = index[&(mi, bi)];
                    let col = index[&(mj, bj)];
                    let target = index[&(mi | mj, k)];
                    entries.push((row, col, target, coeff));
                }
            }
        }
        let algebra = Superalgebra::new(a.field(), parity, labels, entries)
            .expect("envelope table is well formed");
        GrassmannEnvelope { algebra, n_generators, pairs, index }
    }

    pub fn algebra(&self) -> &Superalgebra {
        &self.algebra
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    /// Envelope coordinate of xi_mask (x) b_base, when parity-compatible.
    pub fn index_of(&self, mask: u64, base: usize) -> Option<usize> {
        self.index.get(&(mask, base)).copied()
    }

    pub fn pair(&self, coord: usize) -> (u64, usize) {
        self.pairs[coord]
    }
}

/// The envelope as a plain (purely even) superalgebra.
pub fn grassmann_envelope(a: &Superalgebra, n_generators: usize) -> Superalgebra {
    GrassmannEnvelope::new(a, n_generators).algebra.clone()
}
