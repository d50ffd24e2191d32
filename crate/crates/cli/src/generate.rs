use sgmpcs_core::instance::{generate_batch, to_orlib, WorkflowParams};

use crate::args::GenerateArgs;
use crate::io::write_atomic;
use crate::{CliResult, Failure};

pub fn run(args: &GenerateArgs) -> CliResult {
    let params = WorkflowParams::new(args.n, args.m).with_durations(args.lo, args.hi);
    let instances = generate_batch(&params, args.seed, args.count).map_err(Failure::usage)?;
    for instance in &instances {
        let path = args.out.join(format!("{}.jss", instance.name()));
        write_atomic(&path, &to_orlib(instance)).map_err(Failure::input)?;
    }
    println!("wrote {} instances to {}", instances.len(), args.out.display());
    Ok(())
}
