//! Brute-force Koszul homology over `F_2` by enumerating every vector.
//!
//! Only the multiplication table of `A` is shared with the engine. The
//! complex is rebuilt here on bitmasks (signs vanish in characteristic 2),
//! cycles and boundaries are found by enumeration, and `ν` is the least `t`
//! for which some `t` cosets generate `Z/B` under the `A`-action.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::LocalAlgebra;
use crate::linalg::FieldElement;

pub const MAX_LENGTH: usize = 4;
pub const MAX_N: usize = 2;
pub const MAX_EXPANDED_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the oracle works over F_2 only (got p = {0})")]
    NotBinary(u32),
    #[error("instance too large for enumeration: length {length}, n {n}, expanded dimension {expanded}")]
    TooLarge { length: usize, n: usize, expanded: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub dims: Vec<usize>,
    pub nus: Vec<usize>,
}

fn choose(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn is_eligible(algebra: &LocalAlgebra, n: usize) -> bool {
    check_size(algebra, n).is_ok()
}

fn check_size(algebra: &LocalAlgebra, n: usize) -> Result<(), OracleError> {
    let p = algebra.field().modulus();
    if p != 2 {
        return Err(OracleError::NotBinary(p));
    }
    let length = algebra.length();
    let expanded = (0..=n).map(|i| choose(n, i)).max().unwrap_or(1) * length;
    if length > MAX_LENGTH || n > MAX_N || expanded > MAX_EXPANDED_DIM {
        return Err(OracleError::TooLarge { length, n, expanded });
    }
    Ok(())
}

struct Tables {
    len: usize,
    /// `mul[a][b]` for all bitmask elements `a, b` of `A`.
    mul: Vec<Vec<u16>>,
    xs: Vec<u16>,
    /// Subsets of `{0..n}` of each size, as sorted index lists in lex order.
    subsets: Vec<Vec<Vec<usize>>>,
}

impl Tables {
    fn new(algebra: &LocalAlgebra, elements: &[Vec<FieldElement>]) -> Self {
        let len = algebra.length();
        let unpack = |a: u16| -> Vec<FieldElement> { (0..len).map(|k| ((a >> k) & 1) as FieldElement).collect() };
        let pack = |v: &[FieldElement]| -> u16 { v.iter().enumerate().fold(0, |acc, (k, &c)| acc | (((c & 1) as u16) << k)) };
        let size = 1usize << len;
        let mul = (0..size)
            .map(|a| (0..size).map(|b| pack(&algebra.mul(&unpack(a as u16), &unpack(b as u16)))).collect())
            .collect();
        let n = elements.len();
        let mut subsets: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
        for mask in 0u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
            subsets[s.len()].push(s);
        }
        for layer in &mut subsets {
            layer.sort();
        }
        Self {
            len,
            mul,
            xs: elements.iter().map(|x| pack(x)).collect(),
            subsets,
        }
    }

    fn block(&self, v: u32, s: usize) -> u16 {
        ((v >> (s * self.len)) & ((1 << self.len) - 1)) as u16
    }

    fn width(&self, i: usize) -> usize {
        self.subsets[i].len() * self.len
    }

    /// `d_i(v) = Σ_S Σ_{j ∈ S} x_j a_S e_{S∖j}`.
    fn d(&self, i: usize, v: u32) -> u32 {
        if i == 0 {
            return 0;
        }
        let mut out = 0u32;
        for (s, set) in self.subsets[i].iter().enumerate() {
            let a = self.block(v, s);
            if a == 0 {
                continue;
            }
            for &j in set {
                let face: Vec<usize> = set.iter().copied().filter(|&t| t != j).collect();
                let pos = self.subsets[i - 1].iter().position(|f| *f == face).expect("face exists");
                let prod = self.mul[self.xs[j] as usize][a as usize] as u32;
                out ^= prod << (pos * self.len);
            }
        }
        out
    }

    fn act(&self, a: u16, v: u32, rank: usize) -> u32 {
        (0..rank).fold(0, |acc, s| {
            acc | ((self.mul[a as usize][self.block(v, s) as usize] as u32) << (s * self.len))
        })
    }
}

fn log2_exact(n: usize) -> usize {
    assert!(n.is_power_of_two(), "a subgroup of F_2^N has 2^k elements");
    n.trailing_zeros() as usize
}

/// All sums `s + o` with `s ∈ set`, `o ∈ orbit`.
fn sumset(set: &[bool], orbit: &[u32]) -> Vec<bool> {
    let mut out = vec![false; set.len()];
    for (s, _) in set.iter().enumerate().filter(|(_, &m)| m) {
        for &o in orbit {
            out[s ^ o as usize] = true;
        }
    }
    out
}

fn min_generators(t: &Tables, rank: usize, z: &[bool], b: &[bool]) -> usize {
    let z_size = z.iter().filter(|&&m| m).count();
    let b_size = b.iter().filter(|&&m| m).count();
    if z_size == b_size {
        return 0;
    }
    let mut seen = b.to_vec();
    let mut reps = Vec::new();
    for v in 0..z.len() {
        if z[v] && !seen[v] {
            reps.push(v as u32);
            for (w, &in_b) in b.iter().enumerate() {
                if in_b {
                    seen[v ^ w] = true;
                }
            }
        }
    }
    let orbits: Vec<Vec<u32>> = reps
        .iter()
        .map(|&g| {
            let mut o: Vec<u32> = (0..1u16 << t.len).map(|a| t.act(a, g, rank)).collect();
            o.sort_unstable();
            o.dedup();
            o
        })
        .collect();

    for size in 1..=reps.len() {
        if search(&orbits, b, b_size, z_size, size, 0) {
            return size;
        }
    }
    unreachable!("the full set of coset representatives generates Z/B")
}

fn search(
    orbits: &[Vec<u32>],
    current: &[bool],
    current_size: usize,
    target: usize,
    remaining: usize,
    start: usize,
) -> bool {
    if remaining == 0 {
        return current_size == target;
    }
    for k in start..orbits.len() {
        // |S + O| ≤ |S|·|O|; skip branches that cannot reach |Z|.
        let largest = orbits[k..].iter().map(Vec::len).max().unwrap_or(1);
        let best = largest.saturating_pow(remaining as u32);
        if current_size.saturating_mul(best) < target {
            continue;
        }
        let next = sumset(current, &orbits[k]);
        let next_size = next.iter().filter(|&&m| m).count();
        if search(orbits, &next, next_size, target, remaining - 1, k + 1) {
            return true;
        }
    }
    false
}

pub fn brute_force_oracle(
    algebra: &LocalAlgebra,
    elements: &[Vec<FieldElement>],
) -> Result<OracleResult, OracleError> {
    let n = elements.len();
    check_size(algebra, n)?;
    let t = Tables::new(algebra, elements);
    let mut dims = Vec::with_capacity(n + 1);
    let mut nus = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let width = t.width(i);
        let z: Vec<bool> = (0..1u32 << width).map(|v| t.d(i, v) == 0).collect();
        let mut b = vec![false; 1 << width];
        if i < n {
            for w in 0..1u32 << t.width(i + 1) {
                b[t.d(i + 1, w) as usize] = true;
            }
        } else {
            b[0] = true;
        }
        let z_size = z.iter().filter(|&&m| m).count();
        let b_size = b.iter().filter(|&&m| m).count();
        dims.push(log2_exact(z_size) - log2_exact(b_size));
        nus.push(min_generators(&t, t.subsets[i].len(), &z, &b));
    }
    Ok(OracleResult { dims, nus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::poly::parse_poly;

    fn setup(names: &[&str], gens: &[&str], xs: &[&str]) -> (LocalAlgebra, Vec<Vec<FieldElement>>) {
        let f = PrimeField::new(2).unwrap();
        let v: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let g = gens.iter().map(|s| parse_poly(s, &v, f, 64).unwrap()).collect();
        let alg = LocalAlgebra::from_generators(f, v.clone(), g, None, 12).unwrap();
        let x = xs
            .iter()
            .map(|s| alg.element_from_poly(&parse_poly(s, &v, f, 64).unwrap()).unwrap())
            .collect();
        (alg, x)
    }

    #[test]
    fn dual_numbers() {
        let (a, x) = setup(&["y"], &["y^2"], &["y"]);
        let r = brute_force_oracle(&a, &x).unwrap();
        assert_eq!(r.dims, vec![1, 1]);
        assert_eq!(r.nus, vec![1, 1]);
    }

    #[test]
    fn square_zero_single_element() {
        let (a, x) = setup(&["y1", "y2"], &["y1^2", "y1*y2", "y2^2"], &["y1"]);
        let r = brute_force_oracle(&a, &x).unwrap();
        assert_eq!(r.dims[1], 2);
        assert_eq!(r.nus[1], 2);
    }

    #[test]
    fn repeated_element_in_char_two() {
        let (a, x) = setup(&["y"], &["y^2"], &["y", "y"]);
        let r = brute_force_oracle(&a, &x).unwrap();
        assert_eq!(r.nus[1], 2);
        let chi: i64 = r.dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        assert_eq!(chi, 0);
    }

    #[test]
    fn size_guards() {
        let (a, x) = setup(&["y"], &["y^5"], &["y"]);
        assert!(matches!(brute_force_oracle(&a, &x), Err(OracleError::TooLarge { .. })));
        let f = PrimeField::new(3).unwrap();
        let v = vec!["y".to_string()];
        let a3 = LocalAlgebra::from_generators(f, v.clone(), vec![parse_poly("y^2", &v, f, 64).unwrap()], None, 12)
            .unwrap();
        assert_eq!(brute_force_oracle(&a3, &[]), Err(OracleError::NotBinary(3)));
    }
}
