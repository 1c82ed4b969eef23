use std::path::Path;

use interval_coloring::scheduler::*;
use interval_coloring::{Budget, ConferenceInstance};

fn sample() -> ConferenceInstance {
    ConferenceInstance::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/conference12.csv")).unwrap()
}

#[test]
fn sample_schedules_minimally() {
    let inst = sample();
    assert_eq!((inst.parents.len(), inst.teachers.len()), (5, 4));
    let ScheduleOutcome::Scheduled { timetable, proven_minimal } = schedule_no_wait(&inst, None, Budget::unlimited()).unwrap() else {
        panic!()
    };
    assert!(proven_minimal);
    assert!(check_no_wait(&timetable).is_empty());
    validate_timetable(&inst, &timetable).unwrap();
    let h = timetable.horizon();
    assert!(fits_in(&inst, h));
    assert!(!fits_in(&inst, h - 1));
}

/// Exhaustive search over slot maps `meetings -> 1..=h`.
fn fits_in(inst: &ConferenceInstance, h: usize) -> bool {
    fn rec(i: usize, h: usize, m: &[(String, String)], slots: &mut Vec<usize>) -> bool {
        if i == m.len() {
            let mut people: std::collections::BTreeMap<&str, Vec<usize>> = Default::default();
            for ((p, t), &s) in m.iter().zip(slots.iter()) {
                people.entry(p).or_default().push(s);
                people.entry(t).or_default().push(s);
            }
            return people.into_values().all(|mut s| {
                s.sort_unstable();
                s.windows(2).all(|w| w[1] == w[0] + 1)
            });
        }
        for s in 1..=h {
            slots.push(s);
            if rec(i + 1, h, m, slots) {
                return true;
            }
            slots.pop();
        }
        false
    }
    h > 0 && rec(0, h, &inst.meetings, &mut Vec::new())
}

#[test]
fn json_instances_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i.json");
    std::fs::write(&path, r#"{"meetings": [["ann", "bio"], ["ann", "chem"]], "slot_duration": "15 min"}"#).unwrap();
    let inst = ConferenceInstance::load(&path).unwrap();
    assert_eq!(inst.meetings.len(), 2);
    assert_eq!(inst.slot_duration.as_deref(), Some("15 min"));
}

#[test]
fn multi_session_partitions_meetings() {
    // K_{3,3} minus nothing plus a pendant meeting; bipartite but not regular.
    let mut pairs: Vec<(String, String)> = (0..3).flat_map(|p| (0..3).map(move |t| (format!("p{p}"), format!("t{t}")))).collect();
    pairs.push(("p3".into(), "t0".into()));
    let inst = ConferenceInstance::new(pairs, [], []).unwrap();
    let m = schedule_multi_session(&inst, Budget::millis(500)).unwrap();
    assert!(m.sessions >= 1);
    assert_eq!(m.timetable.entries.len(), inst.meetings.len());
    let ids: std::collections::BTreeSet<usize> = m.timetable.entries.iter().map(|e| e.meeting).collect();
    assert_eq!(ids.len(), inst.meetings.len());
    assert!(check_no_wait(&m.timetable).is_empty());
}

#[test]
fn tree_instance_needs_one_session() {
    let inst = ConferenceInstance::new([("a", "x"), ("a", "y"), ("b", "y"), ("c", "y")].map(|(p, t)| (p.to_string(), t.to_string())), [], []).unwrap();
    assert_eq!(schedule_multi_session(&inst, Budget::millis(100)).unwrap().sessions, 1);
}

#[test]
fn gadget_instance_inside_gap_is_not_scheduled() {
    let (g, _) = interval_coloring::gadgets::build_boldf(1, 24).unwrap();
    let inst = ConferenceInstance::from_bipartite_graph(&g).unwrap();
    let outcome = schedule_no_wait(&inst, Some(80), Budget::millis(1000)).unwrap();
    assert!(matches!(outcome, ScheduleOutcome::NoSchedule | ScheduleOutcome::Timeout), "{outcome:?}");
}

#[test]
fn demo_writes_instance_timetables_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = demo_instability(1, 24, dir.path(), Budget::millis(300)).unwrap();
    assert_eq!(report.pieces, vec![(74, 74), (99, 99)]);
    assert_eq!(report.gaps.len(), 1);
    assert_eq!(report.gaps[0].size, 24);
    assert_eq!(report.timetables.iter().map(|(t, _)| *t).collect::<Vec<_>>(), vec![74, 99]);
    let inst = ConferenceInstance::load(&report.instance_path).unwrap();
    for (t, path) in &report.timetables {
        let tt = Timetable::from_csv_reader(std::fs::File::open(path).unwrap()).unwrap();
        assert_eq!(tt.horizon(), *t);
        validate_timetable(&inst, &tt).unwrap();
    }
    let text = std::fs::read_to_string(&report.report_path).unwrap();
    assert!(text.contains("75 to 98"));
    assert!(text.contains("not machine-verified"));
    assert!(matches!(report.probe, Some((86, ProbeStatus::Timeout | ProbeStatus::NoSchedule))));
}

#[test]
fn demo_with_two_gaps() {
    let dir = tempfile::tempdir().unwrap();
    let report = demo_instability(2, 24, dir.path(), Budget::millis(100)).unwrap();
    assert_eq!(report.pieces.len(), 3);
    assert_eq!(report.gaps.len(), 2);
    assert!(report.gaps.iter().all(|g| g.size >= 24));
    assert_eq!(report.timetables.len(), 4);
}
