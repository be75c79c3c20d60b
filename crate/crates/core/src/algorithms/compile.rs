//! Gate-level schedules for each algorithm family, in execution order.

use std::sync::Arc;

use super::spec::{AlgorithmSpec, Family, Scope};
use crate::error::{Error, Result};
use crate::ops::{PrimitiveOp, Schedule};

/// Compiles `spec` into a schedule.
pub fn build_schedule(spec: &AlgorithmSpec) -> Result<Schedule> {
    spec.validate()?;
    let n = spec.n;
    let sched = match &spec.family {
        Family::InfinityPac => return Err(Error::NotCompilable(spec.family.to_string())),
        f @ (Family::Pac2 | Family::MPac(_) | Family::VmPac(_)) => {
            let levels = mpac_levels(&f.pac_cycles(spec.levels()).expect("pac family"));
            match spec.scope {
                Scope::MsbOnly => clone_body(&levels[spec.levels()]),
                Scope::FullString => pac_full_string(&levels),
            }
        }
        Family::Pac3 => {
            let levels = pac3_levels(n);
            match spec.scope {
                Scope::MsbOnly => clone_body(&levels[n]),
                Scope::FullString => {
                    let mut s = Schedule::new();
                    for k in (1..=n).rev() {
                        s.append(&levels[k]);
                    }
                    s
                }
            }
        }
        // F(n, n) already leaves every lower spin at its series value.
        f @ (Family::MFib(_) | Family::DeltaFib | Family::Fernandez(_)) => {
            let cycles: Vec<u32> = (0..=n).map(|k| f.fib_cycles(n, k).unwrap_or(0)).collect();
            clone_body(&fib_levels(n, &cycles)[n])
        }
    };
    Ok(sched)
}

fn clone_body(s: &Arc<Schedule>) -> Schedule {
    let mut out = Schedule::new();
    out.append(s);
    out
}

/// `M_0 .. M_J` for cycle counts `m_1 .. m_J`; `M_j` cools spin `2j+1`.
///
/// `M_j = M_{j-1}, PT(k-2 -> k), [M_{j-1}, PT(k-2 -> k-1), M_{j-1}, B(k)]^{m_j}`
/// in execution order.
pub(crate) fn mpac_levels(cycles: &[u32]) -> Vec<Arc<Schedule>> {
    let mut levels = vec![Schedule::from_ops([PrimitiveOp::reset(1)]).shared()];
    for (j, &m) in cycles.iter().enumerate() {
        let k = 2 * (j + 1) + 1;
        let prev = &levels[j];
        let mut cycle = Schedule::new();
        cycle
            .append(prev)
            .push(PrimitiveOp::pt(k - 2, k - 1))
            .append(prev)
            .push(PrimitiveOp::compress_onto(k));
        let cycle = cycle.shared();
        let mut level = Schedule::new();
        level.append(prev).push(PrimitiveOp::pt(k - 2, k)).repeat(m as u64, &cycle);
        levels.push(level.shared());
    }
    levels
}

/// `M_J(n)`, then `M_j, PT(2j+1 -> 2j+2), M_j` for `j = J-1 .. 1`, then
/// `RESET, PT(1 -> 2), RESET`.
fn pac_full_string(levels: &[Arc<Schedule>]) -> Schedule {
    let top = levels.len() - 1;
    let mut s = Schedule::new();
    s.append(&levels[top]);
    for j in (0..top).rev() {
        let k = 2 * j + 1;
        s.append(&levels[j]).push(PrimitiveOp::pt(k, k + 1)).append(&levels[j]);
    }
    s
}

/// `P_1 .. P_n` (index 0 unused); `P_k` cools spin `k`.
///
/// `P_1 = RESET`, `P_2 = RESET, PT(1 -> 2)`,
/// `P_k = P_{k-1}, PT(k-1 -> k), P_{k-1}, P_{k-2}, B(k)`.
pub(crate) fn pac3_levels(n: usize) -> Vec<Arc<Schedule>> {
    let mut levels = vec![Schedule::new().shared()];
    levels.push(Schedule::from_ops([PrimitiveOp::reset(1)]).shared());
    levels.push(Schedule::from_ops([PrimitiveOp::reset(1), PrimitiveOp::pt(1, 2)]).shared());
    for k in 3..=n {
        let mut s = Schedule::new();
        s.append(&levels[k - 1])
            .push(PrimitiveOp::pt(k - 1, k))
            .append(&levels[k - 1])
            .append(&levels[k - 2])
            .push(PrimitiveOp::compress_onto(k));
        levels.push(s.shared());
    }
    levels
}

/// `F(n, 2) .. F(n, n)` (indices 0 and 1 unused).
///
/// `F(n, 2) = RESET, PT(1 -> 2), RESET` and
/// `F(n, k) = F(n, k-1), [B(k), F(n, k-1)]^{m_k}`.
pub(crate) fn fib_levels(n: usize, cycles: &[u32]) -> Vec<Arc<Schedule>> {
    let mut levels = vec![Schedule::new().shared(); 2];
    levels.push(
        Schedule::from_ops([PrimitiveOp::reset(1), PrimitiveOp::pt(1, 2), PrimitiveOp::reset(1)]).shared(),
    );
    for k in 3..=n {
        let prev = &levels[k - 1];
        let mut cycle = Schedule::new();
        cycle.push(PrimitiveOp::compress_onto(k)).append(prev);
        let cycle = cycle.shared();
        let mut s = Schedule::new();
        s.append(prev).repeat(cycles[k] as u64, &cycle);
        levels.push(s.shared());
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::PrimitiveOp as Op;

    #[test]
    fn three_spin_mpac_matches_written_form() {
        // [B(3) M0 PT(1->2) M0]^m PT(1->3) M0, read right to left, m = 2
        let s = build_schedule(&AlgorithmSpec::msb(Family::MPac(2), 3).unwrap()).unwrap();
        let expected = vec![
            Op::reset(1),
            Op::pt(1, 3),
            Op::reset(1),
            Op::pt(1, 2),
            Op::reset(1),
            Op::comp3(3, 2, 1),
            Op::reset(1),
            Op::pt(1, 2),
            Op::reset(1),
            Op::comp3(3, 2, 1),
        ];
        assert_eq!(s.ops().collect::<Vec<_>>(), expected);
        assert_eq!(s.reset_count(), 5);
    }

    #[test]
    fn pac3_on_three_spins() {
        // M_2(3) = B(3) M_0(1) M_1(2) PT(2->3) M_1(2)
        let s = build_schedule(&AlgorithmSpec::msb(Family::Pac3, 3).unwrap()).unwrap();
        let expected = vec![
            Op::reset(1),
            Op::pt(1, 2),
            Op::pt(2, 3),
            Op::reset(1),
            Op::pt(1, 2),
            Op::reset(1),
            Op::comp3(3, 2, 1),
        ];
        assert_eq!(s.ops().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn fib_three_spins() {
        // F(3,3) = [F(3,2) B(3)]^m F(3,2)
        let s = build_schedule(&AlgorithmSpec::msb(Family::MFib(2), 3).unwrap()).unwrap();
        let f2 = [Op::reset(1), Op::pt(1, 2), Op::reset(1)];
        let mut expected = f2.to_vec();
        for _ in 0..2 {
            expected.push(Op::comp3(3, 2, 1));
            expected.extend(f2);
        }
        assert_eq!(s.ops().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn full_string_mpac_prefix_chain() {
        let s = build_schedule(&AlgorithmSpec::full(Family::Pac2, 5).unwrap()).unwrap();
        let ops: Vec<_> = s.ops().collect();
        assert_eq!(&ops[ops.len() - 3..], &[Op::reset(1), Op::pt(1, 2), Op::reset(1)]);
        assert_eq!(s.reset_count(), 17);
        assert_eq!(s.max_spin(), 5);
    }

    #[test]
    fn infinity_pac_is_not_compilable() {
        let spec = AlgorithmSpec::msb(Family::InfinityPac, 5).unwrap();
        assert!(matches!(build_schedule(&spec), Err(Error::NotCompilable(_))));
    }
}
