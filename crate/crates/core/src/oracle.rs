//! Brute-force irreducibility over `Q` for small degrees.
//!
//! Kept independent of the rest of the crate: it works on the primitive
//! integer form of the input and enumerates candidate factors with
//! Kronecker's method. A factor `g` of degree `d` takes at each integer node
//! `x_k` a value dividing `P(x_k)`, so `g` is one of finitely many
//! interpolants through divisor choices at `d + 1` nodes. Divided differences
//! of an integer polynomial on integer nodes are integers, which prunes most
//! branches early. Survivors are filtered by the Mignotte coefficient bound
//! and confirmed by exact division.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::BigInt;
use crate::poly::FormalPoly;

/// Largest degree the oracle accepts.
pub const MAX_DEGREE: usize = 6;

/// Node values above this magnitude are not factored.
const MAX_NODE_VALUE: u64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub irreducible: bool,
    /// Primitive integer form of the input (content removed, positive
    /// leading coefficient), coefficients in ascending order.
    pub primitive: Vec<BigInt>,
    /// When reducible, two integer factors of degree ≥ 1 whose product is
    /// `primitive`.
    pub factors: Option<(Vec<BigInt>, Vec<BigInt>)>,
}

/// Clears denominators and content; the leading coefficient is made positive.
pub fn primitive_integer_form(poly: &FormalPoly) -> Vec<BigInt> {
    let len = poly.actual_degree().map_or(1, |d| d + 1);
    let coeffs = &poly.coeffs()[..len];
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() {
        let sign = if ints[len - 1].is_negative() { -1 } else { 1 };
        let content = content * sign;
        for c in &mut ints {
            *c = &*c / &content;
        }
    }
    ints
}

fn eval_int(p: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

/// Quotient of `p / g` over `Z`, if exact.
fn divide_exact(p: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    if p.len() < g.len() {
        return None;
    }
    let mut rem: Vec<BigInt> = p.to_vec();
    let mut quot = vec![BigInt::zero(); p.len() - dg];
    for k in (0..quot.len()).rev() {
        let (q, r) = rem[k + dg].div_rem(&g[dg]);
        if !r.is_zero() {
            return None;
        }
        for (j, gj) in g.iter().enumerate() {
            rem[k + j] -= &q * gj;
        }
        quot[k] = q;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

fn multiply(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Positive divisors by trial division.
fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while (d as u128) * (d as u128) <= n as u128 {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

struct Node {
    x: i64,
    /// `±d` for every positive divisor `d` of `P(x)`.
    choices: Vec<BigInt>,
}

struct Search<'a> {
    target: &'a [BigInt],
    nodes: Vec<Node>,
    bound: BigInt,
    /// `table[k][j]` = divided difference `g[x_{k-j}, ..., x_k]`.
    table: Vec<Vec<BigInt>>,
}

impl Search<'_> {
    fn run(&mut self, k: usize) -> Option<Vec<BigInt>> {
        let choices = std::mem::take(&mut self.nodes[k].choices);
        let mut found = None;
        for y in &choices {
            // g and -g are the same factor up to a unit.
            if k == 0 && y.is_negative() {
                continue;
            }
            if !self.extend_row(k, y) {
                continue;
            }
            found = if k + 1 == self.nodes.len() {
                self.finish()
            } else {
                self.run(k + 1)
            };
            if found.is_some() {
                break;
            }
        }
        self.nodes[k].choices = choices;
        found
    }

    fn extend_row(&mut self, k: usize, y: &BigInt) -> bool {
        let mut row = Vec::with_capacity(k + 1);
        row.push(y.clone());
        for j in 1..=k {
            let span = BigInt::from(self.nodes[k].x - self.nodes[k - j].x);
            let (q, r) = (&row[j - 1] - &self.table[k - 1][j - 1]).div_rem(&span);
            if !r.is_zero() {
                return false;
            }
            row.push(q);
        }
        self.table.truncate(k);
        self.table.push(row);
        true
    }

    fn finish(&self) -> Option<Vec<BigInt>> {
        let d = self.nodes.len() - 1;
        let lead = &self.table[d][d];
        if lead.is_zero() || !(self.target.last()? % lead).is_zero() {
            return None;
        }
        // Newton form to monomial coefficients.
        let mut coeffs = vec![self.table[d][d].clone()];
        for k in (0..d).rev() {
            let xk = BigInt::from(self.nodes[k].x);
            let mut next = vec![BigInt::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &xk;
            }
            next[0] += &self.table[k][k];
            coeffs = next;
        }
        if coeffs.iter().any(|c| c.abs() > self.bound) {
            return None;
        }
        divide_exact(self.target, &coeffs).map(|_| coeffs)
    }
}

/// Decides irreducibility over `Q` of a polynomial of degree 1 to 6 whose
/// actual degree equals its formal degree.
pub fn brute_irreducible(poly: &FormalPoly) -> Result<OracleVerdict> {
    let n = poly.formal_degree();
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !poly.is_proper() {
        return Err(Error::RootAtInfinity(n));
    }
    if n == 0 {
        return Err(Error::DegreeTooSmall {
            required: 1,
            actual: 0,
        });
    }
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            max: MAX_DEGREE,
            actual: n,
        });
    }
    let prim = primitive_integer_form(poly);
    let verdict = |factors: Option<(Vec<BigInt>, Vec<BigInt>)>| OracleVerdict {
        irreducible: factors.is_none(),
        primitive: prim.clone(),
        factors,
    };
    if n == 1 {
        return Ok(verdict(None));
    }

    let max_coeff = prim.iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = (BigInt::one() << n) * max_coeff;

    let mut nodes = Vec::new();
    let reach = (n + 4) as i64;
    for x in (0..=reach).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }) {
        let value = eval_int(&prim, x);
        if value.is_zero() {
            let linear = vec![BigInt::from(-x), BigInt::one()];
            let quotient = divide_exact(&prim, &linear).expect("root gives a linear factor");
            return Ok(verdict(Some((linear, quotient))));
        }
        let Some(m) = value.abs().to_u64().filter(|&m| m <= MAX_NODE_VALUE) else {
            continue;
        };
        let choices = divisors(m)
            .into_iter()
            .flat_map(|d| [BigInt::from(d), -BigInt::from(d)])
            .collect();
        nodes.push(Node { x, choices });
    }
    nodes.sort_by_key(|node| (node.choices.len(), node.x.unsigned_abs()));
    if nodes.len() < n / 2 + 1 {
        return Err(Error::DegreeTooLarge {
            max: MAX_DEGREE,
            actual: n,
        });
    }

    for d in 1..=n / 2 {
        let chosen = nodes.drain(..d + 1).collect();
        let mut search = Search {
            target: &prim,
            nodes: chosen,
            bound: bound.clone(),
            table: Vec::new(),
        };
        let found = search.run(0);
        // Put the nodes back for the next degree.
        let mut back = search.nodes;
        back.append(&mut nodes);
        back.sort_by_key(|node| (node.choices.len(), node.x.unsigned_abs()));
        nodes = back;
        if let Some(g) = found {
            let q = divide_exact(&prim, &g).expect("checked in finish");
            return Ok(verdict(Some((g, q))));
        }
    }
    Ok(verdict(None))
}

/// Product of two integer coefficient vectors, for checking witnesses.
pub fn multiply_factors(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    multiply(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational;

    fn p(c: &[i64]) -> FormalPoly {
        FormalPoly::from_ints(c)
    }

    fn ints(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn assert_reducible(poly: &FormalPoly) {
        let v = brute_irreducible(poly).unwrap();
        assert!(!v.irreducible, "{poly:?}");
        let (g, h) = v.factors.unwrap();
        assert!(g.len() >= 2 && h.len() >= 2);
        assert_eq!(multiply_factors(&g, &h), v.primitive);
    }

    #[test]
    fn examples() {
        let v = brute_irreducible(&p(&[-1, 0, 1])).unwrap();
        assert!(!v.irreducible);
        let (g, h) = v.factors.unwrap();
        assert_eq!(multiply_factors(&g, &h), ints(&[-1, 0, 1]));

        assert!(
            brute_irreducible(&p(&[9, 0, -14, 0, 1]))
                .unwrap()
                .irreducible
        );
        assert!(brute_irreducible(&p(&[8, 4, 1])).unwrap().irreducible);
    }

    #[test]
    fn reducible_without_rational_roots() {
        // (x^2 + 1)(x^2 + 2)
        assert_reducible(&p(&[2, 0, 3, 0, 1]));
        // (x^2 - 2)(x^2 + x + 3)
        assert_reducible(&(&p(&[-2, 0, 1]) * &p(&[3, 1, 1])));
        // (2x^3 + x + 5)(3x^3 - x^2 + 7)
        assert_reducible(&(&p(&[5, 1, 0, 2]) * &p(&[7, 0, -1, 3])));
        // (x^2 + x + 1)(x^4 + x + 1)
        assert_reducible(&(&p(&[1, 1, 1]) * &p(&[1, 1, 0, 0, 1])));
    }

    #[test]
    fn irreducible_examples() {
        for c in [
            &[1, 1, 1, 1, 1][..],
            &[2, 0, 0, 0, 0, 1],
            &[1, -1, 0, 0, 0, 0, 1],
            &[3, 0, 0, 1],
        ] {
            assert!(brute_irreducible(&p(c)).unwrap().irreducible, "{c:?}");
        }
    }

    #[test]
    fn rational_input_uses_primitive_form() {
        let a = FormalPoly::new(vec![rational(-1, 2), rational(0, 1), rational(-1, 2)]);
        let v = brute_irreducible(&a).unwrap();
        assert_eq!(v.primitive, ints(&[1, 0, 1]));
        assert!(v.irreducible);
        let b = FormalPoly::new(vec![rational(-1, 6), rational(1, 6), rational(1, 1)]);
        assert_eq!(primitive_integer_form(&b), ints(&[-1, 1, 6]));
        assert!(!brute_irreducible(&b).unwrap().irreducible);
    }

    #[test]
    fn guards() {
        assert!(matches!(
            brute_irreducible(&p(&[1, 1, 1, 1, 1, 1, 1, 1])),
            Err(Error::DegreeTooLarge { .. })
        ));
        assert!(matches!(
            brute_irreducible(&p(&[5])),
            Err(Error::DegreeTooSmall { .. })
        ));
        let improper = FormalPoly::with_formal_degree(p(&[1, 1]).into_coeffs(), 2).unwrap();
        assert!(matches!(
            brute_irreducible(&improper),
            Err(Error::RootAtInfinity(2))
        ));
        assert!(brute_irreducible(&p(&[3, 7])).unwrap().irreducible);
    }
}
