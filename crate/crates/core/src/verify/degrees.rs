//! Randomized checks of the two degree lemmas for one- and two-block
//! Casorati-type determinants with shifts `l_j = j`.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{CheckEntry, CheckName, VerifyReport, Witness};
use crate::matrix::det_polynomial_rows;
use crate::poly::Polynomial;
use crate::rational::{int, pow, rat, to_string, Rational};

fn choose2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

/// `det(S_ij)` with `S_ij = R_i(x - l_j)` in the first block and
/// `w^{m-j} R_i(x - l_j)` in the second.
pub fn lemma_det(rs: &[Polynomial], m1: usize, w: &Rational, l: &[i64]) -> Polynomial {
    let m = rs.len() as i64;
    let rows = rs
        .iter()
        .enumerate()
        .map(|(i, r)| {
            l.iter()
                .enumerate()
                .map(|(j, &lj)| {
                    let e = r.shift(&int(-lj));
                    if i < m1 {
                        e
                    } else {
                        e.scale(&pow(w, m - 1 - j as i64))
                    }
                })
                .collect()
        })
        .collect();
    det_polynomial_rows(rows).expect("square by construction")
}

/// `sum_{j=1}^{m+1} (-1)^{j+1} w^{eps (m+1-j)} det U_j(x)`.
pub fn lemma_u_sum(rs: &[Polynomial], m1: usize, w: &Rational, eps: i64) -> Polynomial {
    let m = rs.len() as i64;
    let mut acc = Polynomial::zero();
    for j in 1..=m + 1 {
        let shifts: Vec<i64> = (1 - j..=m + 1 - j).filter(|&r| r != 0).collect();
        let rows = rs
            .iter()
            .enumerate()
            .map(|(l, rl)| {
                shifts
                    .iter()
                    .map(|&r| {
                        let e = rl.shift(&int(-r));
                        if l < m1 {
                            e
                        } else {
                            e.scale(&pow(w, m + 1 - j - r))
                        }
                    })
                    .collect()
            })
            .collect();
        let det = det_polynomial_rows(rows).expect("square by construction");
        let sign = if j % 2 == 1 { int(1) } else { int(-1) };
        acc += &det.scale(&(sign * pow(w, eps * (m + 1 - j))));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeInstance {
    pub m1: usize,
    pub m2: usize,
    pub degrees: Vec<usize>,
    pub w: String,
    pub det_degree: Option<usize>,
    pub expected: i64,
    pub bound: i64,
    pub u_degrees: [Option<usize>; 2],
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> Polynomial {
    let mut c: Vec<Rational> = (0..degree).map(|_| int(rng.gen_range(-5..=5))).collect();
    let lead = loop {
        let v = rng.gen_range(-5..=5);
        if v != 0 {
            break v;
        }
    };
    c.push(int(lead));
    Polynomial::new(c)
}

fn random_w(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let w = rat(rng.gen_range(-7..=7), rng.gen_range(1..=5));
        if w != int(0) && w != int(1) {
            return w;
        }
    }
}

fn below(p: &Polynomial, expected: i64) -> bool {
    p.degree().map_or(true, |d| (d as i64) < expected)
}

/// Runs `trials` random instances with at most four rows and degrees at
/// most six.
pub fn degree_property_harness(seed: u64, trials: usize) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witnesses = Vec::new();
    let mut instances = Vec::new();
    let (mut exact, mut drops, mut bounds, mut literal_violations) = (0usize, 0usize, 0usize, 0usize);
    for t in 0..trials {
        let m = rng.gen_range(1..=4usize);
        let m1 = rng.gen_range(0..=m);
        let m2 = m - m1;
        let mut degrees: Vec<usize> = sample(&mut rng, 7, m1).into_vec();
        degrees.extend(sample(&mut rng, 7, m2).into_vec());
        let rs: Vec<Polynomial> = degrees.iter().map(|&d| random_poly(&mut rng, d)).collect();
        let w = random_w(&mut rng);
        let l: Vec<i64> = (1..=m as i64).collect();
        let total: i64 = degrees.iter().map(|&d| d as i64).sum();
        let expected = total - choose2(m1) - choose2(m2);

        let det = lemma_det(&rs, m1, &w, &l);
        if det.degree().map(|d| d as i64) == Some(expected) {
            exact += 1;
        } else {
            witnesses.push(Witness::at(t as i64, format!("deg det = {:?}, expected {expected}", det.degree())));
        }

        // w = 1 merges two nonempty blocks; w = 0 kills a second block of two or more rows.
        if m1 >= 1 && m2 >= 1 {
            if below(&lemma_det(&rs, m1, &int(1), &l), expected) {
                drops += 1;
            } else {
                witnesses.push(Witness::at(t as i64, "no degree drop at w = 1"));
            }
        }
        if m2 >= 2 {
            if below(&lemma_det(&rs, m1, &int(0), &l), expected) {
                drops += 1;
            } else {
                witnesses.push(Witness::at(t as i64, "no degree drop at w = 0"));
            }
        }

        // As printed: one bound for both eps. The block-specific bound counts
        // the extra constant row in block 1 (eps = 0) or block 2 (eps = 1).
        let bound = total - (choose2(m1) + choose2(m2 + 1)).max(choose2(m1 + 1) + choose2(m2));
        let mut u_degrees = [None, None];
        for eps in 0..2i64 {
            let u = lemma_u_sum(&rs, m1, &w, eps);
            let block_bound = total - choose2(m1 + 1 - eps as usize) - choose2(m2 + eps as usize);
            u_degrees[eps as usize] = u.degree();
            let deg = u.degree().map(|d| d as i64);
            if deg.map_or(true, |d| d <= bound) {
                bounds += 1;
            } else {
                literal_violations += 1;
                witnesses.push(Witness::at(t as i64, format!("eps={eps}: degree {} exceeds {bound}", deg.unwrap())));
            }
            if deg.is_some_and(|d| d > block_bound) {
                witnesses.push(Witness::at(t as i64, format!("eps={eps}: degree {} exceeds block bound {block_bound}", deg.unwrap())));
            }
        }
        instances.push(DegreeInstance {
            m1,
            m2,
            degrees,
            w: to_string(&w),
            det_degree: det.degree(),
            expected,
            bound,
            u_degrees,
        });
    }
    let data = json!({
        "trials": trials,
        "exact_degree": exact,
        "exceptional_drops": drops,
        "bound_checks": bounds,
        "bound_violations": literal_violations,
        "instances": instances,
    });
    let entry = CheckEntry::judged(CheckName::DegreeLemmas, witnesses, data);
    VerifyReport::new(json!({ "suite": "degrees", "seed": seed, "trials": trials }), vec![entry])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_block_example() {
        let rs = vec![Polynomial::from_ints(&[2, 1]), Polynomial::from_ints(&[0, 1, 0, 1])];
        let det = lemma_det(&rs, 2, &int(3), &[1, 2]);
        assert_eq!(det.degree(), Some(3));
    }

    #[test]
    fn one_row_keeps_degree() {
        let r = Polynomial::from_ints(&[1, 0, 4, -1]);
        assert_eq!(lemma_det(&[r.clone()], 1, &int(2), &[1]).degree(), r.degree());
        assert_eq!(lemma_det(&[r.clone()], 0, &int(2), &[1]).degree(), r.degree());
    }

    #[test]
    fn mixed_blocks_drop_at_one() {
        let rs = vec![Polynomial::from_ints(&[0, 1]), Polynomial::from_ints(&[1, 0, 1])];
        assert_eq!(lemma_det(&rs, 1, &int(2), &[1, 2]).degree(), Some(3));
        assert!(below(&lemma_det(&rs, 1, &int(1), &[1, 2]), 3));
    }

    #[test]
    fn printed_bound_fails_for_one_row_with_weight() {
        // w R(x-1) - R(x+1) keeps the degree of R unless w = 1.
        let u = lemma_u_sum(&[Polynomial::from_ints(&[0, 1])], 1, &int(2), 1);
        assert_eq!(u, Polynomial::from_ints(&[-3, 1]));
        assert_eq!(lemma_u_sum(&[Polynomial::from_ints(&[0, 1])], 1, &int(2), 0), Polynomial::from_ints(&[-2]));
    }

    #[test]
    fn harness_is_deterministic() {
        assert_eq!(degree_property_harness(7, 5), degree_property_harness(7, 5));
    }
}
