use std::collections::{BTreeMap, BTreeSet};

use super::mre::{mean_relative_error, mre_by_algorithm};
use super::record::RunRecord;
use crate::error::MetricsError;
use crate::instance::{BestKnown, Bounds, Time};

/// Aggregate of one algorithm's runs on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub runs: usize,
    pub mean: f64,
    pub best: Time,
    pub found: usize,
    pub proved: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub instance: String,
    pub bounds: Bounds,
    pub cells: BTreeMap<String, Cell>,
}

/// Mean and best makespan per instance and algorithm, plus the MRE row.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub algorithms: Vec<String>,
    pub rows: Vec<TableRow>,
    /// MRE of all runs per algorithm.
    pub mre: BTreeMap<String, f64>,
    /// MRE of the per-instance best run per algorithm.
    pub mre_of_best: BTreeMap<String, f64>,
}

impl ResultTable {
    /// Fails with every instance lacking bounds when any is missing.
    pub fn build(records: &[RunRecord], best_known: &BestKnown) -> Result<ResultTable, MetricsError> {
        if records.is_empty() {
            return Err(MetricsError::Empty);
        }
        let missing: BTreeSet<String> = records
            .iter()
            .filter(|r| best_known.get(&r.instance).is_none())
            .map(|r| r.instance.clone())
            .collect();
        if !missing.is_empty() {
            return Err(MetricsError::MissingBounds(missing.into_iter().collect()));
        }

        let algorithms: Vec<String> = records
            .iter()
            .map(|r| r.algorithm.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        let mut grouped: BTreeMap<&str, BTreeMap<&str, Vec<&RunRecord>>> = BTreeMap::new();
        for r in records {
            grouped
                .entry(&r.instance)
                .or_default()
                .entry(&r.algorithm)
                .or_default()
                .push(r);
        }

        let rows: Vec<TableRow> = grouped
            .into_iter()
            .map(|(instance, by_alg)| {
                let bounds = *best_known.get(instance).expect("checked above");
                let optimum = bounds.optimal.then_some(bounds.upper);
                let cells = by_alg
                    .into_iter()
                    .map(|(algorithm, runs)| {
                        let costs: Vec<Time> = runs.iter().map(|r| r.best_makespan).collect();
                        let cell = Cell {
                            runs: runs.len(),
                            mean: costs.iter().sum::<Time>() as f64 / runs.len() as f64,
                            best: *costs.iter().min().expect("non-empty group"),
                            found: runs
                                .iter()
                                .filter(|r| r.found_optimal || optimum.is_some_and(|o| r.best_makespan <= o))
                                .count(),
                            proved: runs.iter().filter(|r| r.proved_optimal).count(),
                        };
                        (algorithm.to_string(), cell)
                    })
                    .collect();
                TableRow {
                    instance: instance.to_string(),
                    bounds,
                    cells,
                }
            })
            .collect();

        let mre = mre_by_algorithm(records, best_known)?;
        let mre_of_best = algorithms
            .iter()
            .map(|alg| {
                let bests = rows
                    .iter()
                    .filter_map(|row| row.cells.get(alg).map(|c| (row.instance.as_str(), c.best)));
                Ok((alg.clone(), mean_relative_error(bests, best_known)?))
            })
            .collect::<Result<_, MetricsError>>()?;

        Ok(ResultTable {
            algorithms,
            rows,
            mre,
            mre_of_best,
        })
    }

    /// `instance,lb,ub,<alg>_mean,<alg>_best,...` with a closing MRE row.
    pub fn to_csv(&self) -> String {
        let mut header = vec!["instance".to_string(), "lb".into(), "ub".into()];
        for alg in &self.algorithms {
            header.push(format!("{alg}_mean"));
            header.push(format!("{alg}_best"));
        }
        let mut lines = vec![header.join(",")];
        for row in &self.rows {
            let mut fields = vec![
                row.instance.clone(),
                row.bounds.lower.to_string(),
                row.bounds.upper.to_string(),
            ];
            for alg in &self.algorithms {
                match row.cells.get(alg) {
                    Some(cell) => {
                        fields.push(format!("{:.2}", cell.mean));
                        fields.push(cell.best.to_string());
                    }
                    None => fields.extend([String::new(), String::new()]),
                }
            }
            lines.push(fields.join(","));
        }
        let mut fields = vec!["MRE".to_string(), String::new(), String::new()];
        for alg in &self.algorithms {
            fields.push(format!("{:.8}", self.mre[alg]));
            fields.push(format!("{:.8}", self.mre_of_best[alg]));
        }
        lines.push(fields.join(","));
        lines.join("\n") + "\n"
    }

    /// Found/proved counts on instances whose optimum is known.
    pub fn optimality_csv(&self) -> String {
        let mut header = vec!["instance".to_string(), "optimal".into()];
        for alg in &self.algorithms {
            header.push(format!("{alg}_found"));
            header.push(format!("{alg}_proved"));
        }
        let mut lines = vec![header.join(",")];
        for row in self.rows.iter().filter(|r| r.bounds.optimal) {
            let mut fields = vec![row.instance.clone(), row.bounds.upper.to_string()];
            for alg in &self.algorithms {
                let (found, proved) = row.cells.get(alg).map_or((0, 0), |c| (c.found, c.proved));
                fields.push(found.to_string());
                fields.push(proved.to_string());
            }
            lines.push(fields.join(","));
        }
        lines.join("\n") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(algorithm: &str, instance: &str, cost: Time, proved: bool) -> RunRecord {
        let mut r = RunRecord::new(algorithm, instance, 0);
        r.best_makespan = cost;
        r.proved_optimal = proved;
        r
    }

    fn bounds() -> BestKnown {
        BestKnown::from_reader("name,lb,ub,optimal\na,90,100,0\nb,50,50,1\n".as_bytes()).unwrap()
    }

    #[test]
    fn aggregates_mean_and_best() {
        let records = vec![
            record("sgmpcs", "a", 100, false),
            record("sgmpcs", "a", 110, false),
            record("chron", "a", 120, false),
            record("sgmpcs", "b", 50, true),
            record("sgmpcs", "b", 52, false),
            record("chron", "b", 60, false),
        ];
        let table = ResultTable::build(&records, &bounds()).unwrap();
        assert_eq!(table.algorithms, vec!["chron", "sgmpcs"]);
        let a = &table.rows[0].cells["sgmpcs"];
        assert_eq!((a.runs, a.mean, a.best), (2, 105.0, 100));
        let b = &table.rows[1].cells["sgmpcs"];
        assert_eq!((b.found, b.proved), (1, 1));
        for row in &table.rows {
            for cell in row.cells.values() {
                assert!(cell.best as f64 <= cell.mean);
            }
        }
        let csv = table.to_csv();
        assert!(csv.starts_with("instance,lb,ub,chron_mean,chron_best,sgmpcs_mean,sgmpcs_best\n"));
        assert!(csv.contains("a,90,100,120.00,120,105.00,100\n"));
        let expected_mre = (0.0 + 0.1 + 0.0 + 0.04) / 4.0;
        assert!((table.mre["sgmpcs"] - expected_mre).abs() < 1e-12);
        assert!(csv.trim_end().ends_with(&format!("{:.8},{:.8}", expected_mre, 0.0)));
        assert_eq!(
            table.optimality_csv(),
            "instance,optimal,chron_found,chron_proved,sgmpcs_found,sgmpcs_proved\nb,50,0,0,1,1\n"
        );
    }

    #[test]
    fn single_run_mean_equals_best() {
        let table = ResultTable::build(&[record("chron", "a", 130, false)], &bounds()).unwrap();
        let cell = &table.rows[0].cells["chron"];
        assert_eq!(cell.mean, cell.best as f64);
    }

    #[test]
    fn reports_every_missing_instance() {
        let records = vec![
            record("x", "q", 1, false),
            record("x", "r", 1, false),
            record("x", "a", 100, false),
        ];
        assert_eq!(
            ResultTable::build(&records, &bounds()),
            Err(MetricsError::MissingBounds(vec!["q".into(), "r".into()]))
        );
    }
}
