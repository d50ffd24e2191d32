use crate::error::MetricsError;
use crate::instance::Solution;

/// Number of disjunctive pairs oriented differently in `a` and `b`.
pub fn hamming(a: &Solution, b: &Solution) -> Result<usize, MetricsError> {
    let (x, y) = (a.orientations(), b.orientations());
    if x.len() != y.len() {
        return Err(MetricsError::MismatchedInstances(x.len(), y.len()));
    }
    Ok(x.iter().zip(y).filter(|(p, q)| p != q).count())
}

/// Mean Hamming distance over all unordered member pairs; 0 for fewer than two
/// members.
pub fn mean_pairwise_diversity(members: &[Solution]) -> f64 {
    let n = members.len();
    if n < 2 {
        return 0.0;
    }
    let mut total = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            total += hamming(&members[i], &members[j]).expect("elite members share an instance");
        }
    }
    total as f64 / (n * (n - 1) / 2) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{parse_orlib, Orientation::*};

    #[test]
    fn distances_on_two_by_two() {
        let inst = parse_orlib("2 2\n0 3 1 4\n1 2 0 6").unwrap();
        let a = Solution::new(&inst, vec![FirstBeforeSecond, FirstBeforeSecond]).unwrap();
        let b = Solution::new(&inst, vec![FirstBeforeSecond, SecondBeforeFirst]).unwrap();
        let c = Solution::new(&inst, vec![SecondBeforeFirst, SecondBeforeFirst]).unwrap();
        assert_eq!(hamming(&a, &a).unwrap(), 0);
        assert_eq!(hamming(&a, &b).unwrap(), 1);
        assert_eq!(hamming(&a, &c).unwrap(), 2);
        assert_eq!(mean_pairwise_diversity(std::slice::from_ref(&a)), 0.0);
        assert_eq!(mean_pairwise_diversity(&[a.clone(), a.clone(), a.clone()]), 0.0);
        assert_eq!(mean_pairwise_diversity(&[a.clone(), c.clone()]), 2.0);
        assert!((mean_pairwise_diversity(&[a, b, c]) - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn mismatched_instances() {
        let small = parse_orlib("2 1\n0 3\n0 4").unwrap();
        let big = parse_orlib("2 2\n0 3 1 4\n1 2 0 6").unwrap();
        let a = Solution::new(&small, vec![FirstBeforeSecond]).unwrap();
        let b = Solution::new(&big, vec![FirstBeforeSecond, SecondBeforeFirst]).unwrap();
        assert_eq!(hamming(&a, &b), Err(MetricsError::MismatchedInstances(1, 2)));
    }
}
