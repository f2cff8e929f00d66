//! Permutations, shuffles and Koszul signs.
//!
//! Permutations are stored 1-based: `images[k - 1] = s(k)`. A permutation
//! acting on a tensor `v_1 ⊗ … ⊗ v_k` reorders it to `v_{s(1)} ⊗ … ⊗ v_{s(k)}`,
//! and the Koszul sign is the sign picked up by that reordering.

use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};

/// A sign in `{+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+1` for even, `-1` for odd input. Only parity matters, so negative
    /// integers are fine.
    pub fn from_parity(n: i64) -> Sign {
        if n.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// `e(v) = (-1)^deg(v)`.
pub fn parity_sign(degree: i64) -> Sign {
    Sign::from_parity(degree)
}

/// A bijection of `{1, …, k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &v in &images {
            if v == 0 || v > k || seen[v - 1] {
                return Err(Error::Argument(format!("{images:?} is not a permutation of 1..={k}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(k: usize) -> Self {
        Permutation {
            images: (1..=k).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `s(i)` for a 1-based position `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// The 0-based index of the element landing at 1-based position `i`.
    pub fn source_index(&self, i: usize) -> usize {
        self.images[i - 1] - 1
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::Argument(format!(
                "cannot compose permutations of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (pos, &v) in self.images.iter().enumerate() {
            inv[v - 1] = pos + 1;
        }
        Permutation { images: inv }
    }

    /// Ordinary sign of the permutation.
    pub fn sign(&self) -> Sign {
        let mut inversions = 0i64;
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.images[a] > self.images[b] {
                    inversions += 1;
                }
            }
        }
        Sign::from_parity(inversions)
    }

    /// Rearranges `items` to `items[s(1)], …, items[s(k)]`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| items[i - 1].clone()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Koszul sign `e(s; v_1, …, v_k)` for elements of the given degrees.
///
/// Bubble-sorts the arrangement `(s(1), …, s(k))` back to the identity; each
/// adjacent swap of elements `u`, `w` contributes `(-1)^(deg u · deg w)`.
pub fn koszul_sign(s: &Permutation, degrees: &[i64]) -> Result<Sign> {
    if s.len() != degrees.len() {
        return Err(Error::Argument(format!(
            "permutation of length {} applied to {} degrees",
            s.len(),
            degrees.len()
        )));
    }
    let mut word: Vec<usize> = s.images().to_vec();
    let mut sign = Sign::Plus;
    for end in (1..word.len()).rev() {
        for j in 0..end {
            if word[j] > word[j + 1] {
                let du = degrees[word[j] - 1];
                let dw = degrees[word[j + 1] - 1];
                sign = sign * Sign::from_parity(du * dw);
                word.swap(j, j + 1);
            }
        }
    }
    Ok(sign)
}

/// All `(p_1, …, p_n)`-shuffles of `S_{p_1+…+p_n}` in lexicographic order of
/// their images.
pub fn shuffles(parts: &[usize]) -> Result<std::vec::IntoIter<Permutation>> {
    if parts.is_empty() {
        return Err(Error::Argument("shuffle needs at least one block".into()));
    }
    if let Some(bad) = parts.iter().find(|&&p| p == 0) {
        return Err(Error::Argument(format!("shuffle block size {bad} must be >= 1")));
    }
    let total: usize = parts.iter().sum();
    let mut out = Vec::new();
    let mut used = vec![false; total + 1];
    let mut images = Vec::with_capacity(total);
    fill_blocks(parts, &mut used, &mut images, &mut out);
    Ok(out.into_iter())
}

/// Same as [`shuffles`] but also accepts empty blocks, which only occur as
/// the degenerate `Sh(p, 0)` of a bracket with nothing left over.
pub(crate) fn shuffles_allow_empty(parts: &[usize]) -> Vec<Permutation> {
    let nonempty: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
    if nonempty.is_empty() {
        return vec![Permutation::identity(0)];
    }
    // Empty blocks impose no constraint, so the shuffle set is unchanged.
    shuffles(&nonempty).map(|it| it.collect()).unwrap_or_default()
}

fn fill_blocks(parts: &[usize], used: &mut Vec<bool>, images: &mut Vec<usize>, out: &mut Vec<Permutation>) {
    match parts.split_first() {
        None => out.push(Permutation { images: images.clone() }),
        Some((&size, rest)) => {
            let free: Vec<usize> = (1..used.len()).filter(|&v| !used[v]).collect();
            choose_increasing(&free, size, 0, rest, used, images, out);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn choose_increasing(
    free: &[usize],
    remaining: usize,
    start: usize,
    rest: &[usize],
    used: &mut Vec<bool>,
    images: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    if remaining == 0 {
        fill_blocks(rest, used, images, out);
        return;
    }
    for idx in start..free.len() {
        if free.len() - idx < remaining {
            break;
        }
        let v = free[idx];
        used[v] = true;
        images.push(v);
        choose_increasing(free, remaining - 1, idx + 1, rest, used, images, out);
        images.pop();
        used[v] = false;
    }
}

/// `(p_1 + … + p_n)! / (p_1! ⋯ p_n!)`.
pub fn multinomial(parts: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut so_far: u128 = 0;
    for &p in parts {
        for i in 1..=p as u128 {
            so_far += 1;
            acc = acc * so_far / i;
        }
    }
    acc
}
