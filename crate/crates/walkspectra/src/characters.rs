//! Exact characters of the symmetric group and the normalized three-cycle
//! character ratio.
//!
//! Characters are computed by peeling border strips (largest class part
//! first, signs by strip height), with two accelerations: memoization on
//! (shape, remaining class) and a closed form once only fixed points
//! remain, where the character equals the hook-length dimension.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::combinatorics::{check_n, Partition};
use crate::{Error, Result};

/// Exact character value of the irrep `shape` on the conjugacy class with
/// cycle type `class`. Both partitions must have the same size.
pub fn character(shape: &Partition, class: &Partition) -> Result<BigInt> {
    if shape.n() != class.n() {
        return Err(Error::InvalidArgument(format!(
            "shape {shape} and class {class} partition different integers"
        )));
    }
    if shape.n() == 0 {
        return Ok(BigInt::one());
    }
    check_n(shape.n())?;
    let mut memo = HashMap::new();
    Ok(strip_rec(shape.parts().to_vec(), class.parts(), 0, &mut memo))
}

fn strip_rec(
    shape: Vec<usize>,
    class: &[usize],
    idx: usize,
    memo: &mut HashMap<(Vec<usize>, usize), BigInt>,
) -> BigInt {
    if shape.is_empty() {
        return BigInt::one();
    }
    // Only fixed points left: the count of fillings is the dimension.
    if class[idx] == 1 {
        let p = Partition::new(shape).expect("recursion keeps shapes valid");
        return BigInt::from(p.dimension());
    }
    if let Some(hit) = memo.get(&(shape.clone(), idx)) {
        return hit.clone();
    }
    let t = class[idx];
    let m = shape.len();
    let betas: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + m - 1 - i).collect();
    let mut total = BigInt::zero();
    for (i, &b) in betas.iter().enumerate() {
        if b < t || betas.contains(&(b - t)) {
            continue;
        }
        let height = betas.iter().filter(|&&x| x > b - t && x < b).count();
        let mut nb = betas.clone();
        nb[i] = b - t;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let mut next: Vec<usize> = nb
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (m - 1 - j))
            .collect();
        while next.last() == Some(&0) {
            next.pop();
        }
        let sub = strip_rec(next, class, idx + 1, memo);
        if height % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    memo.insert((shape, idx), total.clone());
    total
}

/// The normalized character on the three-cycle class: character value on
/// cycle type (3, 1, ..., 1) divided by the dimension, as an exact reduced
/// rational. Requires n >= 3. Conjugate shapes share this value because
/// three-cycles are even.
pub fn normalized_three_cycle(shape: &Partition) -> Result<Ratio<BigInt>> {
    let n = shape.n();
    if n < 3 {
        return Err(Error::SizeLimit {
            what: "normalized_three_cycle n",
            requested: n as u64,
            limit: 2,
        });
    }
    check_n(n)?;
    let mut class = vec![3];
    class.extend(std::iter::repeat_n(1, n - 3));
    let chi = character(shape, &Partition::new(class)?)?;
    let dim = BigInt::from(shape.dimension());
    Ok(Ratio::new(chi, dim))
}

