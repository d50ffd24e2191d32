use std::collections::BTreeMap;

use super::record::RunRecord;
use crate::error::MetricsError;
use crate::instance::{BestKnown, Time};

/// `(cost - best) / best`.
pub fn relative_error(cost: Time, best: Time) -> f64 {
    (cost - best) as f64 / best as f64
}

/// Mean relative error of the records' final makespans against the best-known
/// upper bounds, averaged over every (instance, run) record.
pub fn mre<'a, I>(records: I, best_known: &BestKnown) -> Result<f64, MetricsError>
where
    I: IntoIterator<Item = &'a RunRecord>,
{
    mean_relative_error(
        records.into_iter().map(|r| (r.instance.as_str(), r.best_makespan)),
        best_known,
    )
}

/// Same as [`mre`] over raw `(instance, cost)` observations.
pub fn mean_relative_error<'a, I>(observations: I, best_known: &BestKnown) -> Result<f64, MetricsError>
where
    I: IntoIterator<Item = (&'a str, Time)>,
{
    let mut sum = 0.0;
    let mut count = 0usize;
    for (instance, cost) in observations {
        let best = best_known
            .upper(instance)
            .ok_or_else(|| MetricsError::MissingBestKnown(instance.to_string()))?;
        if best <= 0 {
            return Err(MetricsError::NonPositiveBestKnown(instance.to_string()));
        }
        sum += relative_error(cost, best);
        count += 1;
    }
    if count == 0 {
        return Err(MetricsError::Empty);
    }
    Ok(sum / count as f64)
}

/// [`mre`] per algorithm id.
pub fn mre_by_algorithm(records: &[RunRecord], best_known: &BestKnown) -> Result<BTreeMap<String, f64>, MetricsError> {
    let mut groups: BTreeMap<&str, Vec<&RunRecord>> = BTreeMap::new();
    for record in records {
        groups.entry(&record.algorithm).or_default().push(record);
    }
    groups
        .into_iter()
        .map(|(algorithm, group)| Ok((algorithm.to_string(), mre(group, best_known)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Bounds;

    fn known(entries: &[(&str, Time)]) -> BestKnown {
        let mut bk = BestKnown::default();
        for &(name, ub) in entries {
            bk.insert(
                name,
                Bounds {
                    lower: ub,
                    upper: ub,
                    optimal: false,
                },
            )
            .unwrap();
        }
        bk
    }

    fn record(algorithm: &str, instance: &str, cost: Time) -> RunRecord {
        let mut r = RunRecord::new(algorithm, instance, 0);
        r.best_makespan = cost;
        r
    }

    #[test]
    fn zero_when_at_best_known() {
        let bk = known(&[("a", 100)]);
        assert_eq!(mre(&[record("x", "a", 100)], &bk).unwrap(), 0.0);
    }

    #[test]
    fn ten_percent() {
        let bk = known(&[("a", 100)]);
        assert!((mre(&[record("x", "a", 110)], &bk).unwrap() - 0.10).abs() < 1e-12);
    }

    #[test]
    fn averages_over_instances_and_runs() {
        let bk = known(&[("a", 100), ("b", 200)]);
        let records = vec![
            record("x", "a", 110),
            record("x", "a", 100),
            record("x", "b", 220),
            record("x", "b", 200),
            record("y", "a", 100),
        ];
        let by_alg = mre_by_algorithm(&records, &bk).unwrap();
        assert!((by_alg["x"] - 0.05).abs() < 1e-12);
        assert_eq!(by_alg["y"], 0.0);
    }

    #[test]
    fn errors() {
        let bk = known(&[("a", 100)]);
        assert_eq!(
            mre(&[record("x", "z", 1)], &bk),
            Err(MetricsError::MissingBestKnown("z".into()))
        );
        assert_eq!(mre(&[], &bk), Err(MetricsError::Empty));
        let zero = known(&[("a", 0)]);
        assert!(matches!(
            mre(&[record("x", "a", 1)], &zero),
            Err(MetricsError::NonPositiveBestKnown(_))
        ));
    }
}
