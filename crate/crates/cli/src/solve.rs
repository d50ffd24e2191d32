use sgmpcs_core::sgmpcs::{Algorithm, EngineConfig};
use sgmpcs_core::{run_baseline, run_sgmpcs, BaselineKind, Instance, RunResult};

use crate::args::SolveArgs;
use crate::io::{load_bounds, load_instance, write_record};
use crate::{CliResult, Failure};

pub fn config_from(args: &SolveArgs) -> EngineConfig {
    EngineConfig {
        elite_size: args.elite_size,
        p: args.p,
        sequence: args.seq,
        traversal: args.bt,
        diversity: args.div,
        bound_policy: args.bound,
        init_samples: args.init_samples,
        time_limit: args.time_limit,
        max_fails: args.max_fails,
        seed: args.seed,
        critical_fraction: args.critical_fraction,
        clock: args.clock,
        trace: args.trace,
        ..EngineConfig::default()
    }
}

pub fn run_algorithm(
    instance: &Instance,
    algorithm: Algorithm,
    config: &EngineConfig,
) -> Result<RunResult, sgmpcs_core::error::ConfigError> {
    match algorithm {
        Algorithm::Sgmpcs => run_sgmpcs(instance, config),
        Algorithm::Chron => run_baseline(instance, BaselineKind::Chron, config),
        Algorithm::Lds => run_baseline(instance, BaselineKind::Lds, config),
        Algorithm::Restart => run_baseline(instance, BaselineKind::Restart, config),
    }
}

pub fn run(args: &SolveArgs) -> CliResult {
    let mut config = config_from(args);
    config.validate().map_err(Failure::usage)?;
    if args.runs == 0 {
        return Err(Failure::usage(anyhow::anyhow!("--runs must be at least 1")));
    }
    let instance = load_instance(&args.instance, args.format)?;
    if let Some(path) = &args.bounds {
        config.known_optimum = load_bounds(path)?.optimum(instance.name());
    }

    let mut costs = Vec::new();
    let mut proved = 0;
    for i in 0..args.runs {
        let config = EngineConfig {
            seed: args.seed + i,
            ..config.clone()
        };
        let result = run_algorithm(&instance, args.algorithm, &config).map_err(Failure::usage)?;
        if let Some(dir) = &args.output {
            write_record(dir, &result.record)?;
        }
        costs.push(result.incumbent.best);
        proved += usize::from(result.incumbent.proved);
    }

    let best = costs.iter().min().expect("at least one run");
    let mean = costs.iter().sum::<i64>() as f64 / costs.len() as f64;
    println!(
        "instance={} algorithm={} runs={} best={} mean={:.2} proved={}",
        instance.name(),
        args.algorithm.id(),
        costs.len(),
        best,
        mean,
        proved
    );
    Ok(())
}
