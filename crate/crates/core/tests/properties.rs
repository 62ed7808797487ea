mod support;

const CASES: u32 = 1000;

#[test]
fn goals_stay_ground_and_well_formed() {
    support::prop_groundness(CASES).unwrap();
}

#[test]
fn goal_count_changes_by_premises_minus_one() {
    support::prop_goal_arithmetic(CASES).unwrap();
}

#[test]
fn undo_inverts_apply() {
    support::prop_undo_apply(CASES).unwrap();
}

#[test]
fn replaying_history_reproduces_the_session() {
    support::prop_replay(CASES).unwrap();
}

#[test]
fn terms_round_trip_through_file_syntax() {
    support::prop_term_round_trip(CASES).unwrap();
}

#[test]
fn problem_files_round_trip() {
    support::prop_problem_round_trip(CASES).unwrap();
}
