use super::{ActivityId, Instance, Orientation, Time};
use crate::error::CyclicError;

/// Earliest start of every activity in the graph made of job chains plus the
/// oriented disjunctive arcs, computed in topological order.
pub fn head_times(instance: &Instance, orientations: &[Orientation]) -> Result<Vec<Time>, CyclicError> {
    let count = instance.activity_count();
    let mut indegree = vec![0u32; count];
    let mut machine_succ: Vec<Vec<ActivityId>> = vec![Vec::new(); count];

    for (pair, &orientation) in instance.pairs().iter().zip(orientations) {
        let (from, to) = orientation.arc(pair);
        machine_succ[from].push(to);
        indegree[to] += 1;
    }
    for (id, degree) in indegree.iter_mut().enumerate() {
        if instance.job_predecessor(id).is_some() {
            *degree += 1;
        }
    }

    let mut head = vec![0; count];
    let mut ready: Vec<ActivityId> = (0..count).filter(|&a| indegree[a] == 0).collect();
    let mut visited = 0;
    while let Some(a) = ready.pop() {
        visited += 1;
        let finish = head[a] + instance.duration(a);
        let job_next = instance.job_successor(a);
        for &b in machine_succ[a].iter().chain(job_next.iter()) {
            head[b] = head[b].max(finish);
            indegree[b] -= 1;
            if indegree[b] == 0 {
                ready.push(b);
            }
        }
    }

    if visited == count {
        Ok(head)
    } else {
        Err(CyclicError)
    }
}

/// Length of the longest path through the oriented graph.
pub fn makespan_of(instance: &Instance, orientations: &[Orientation]) -> Result<Time, CyclicError> {
    let head = head_times(instance, orientations)?;
    Ok(head
        .iter()
        .enumerate()
        .map(|(a, &start)| start + instance.duration(a))
        .max()
        .unwrap_or(0))
}
