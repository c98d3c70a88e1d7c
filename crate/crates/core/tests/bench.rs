use psw::bench::{run_matrix, BenchCase, BenchMatrix, CellConfig, REFERENCE_STATES};
use psw::bundled::CASES;
use psw::search::{Learning, SearchStatus};

fn quick() -> BenchMatrix {
    BenchMatrix::standard().with_repetitions(2)
}

#[test]
fn full_matrix_has_every_cell_and_the_oracle_column() {
    let report = run_matrix(&quick());
    assert_eq!(report.rows.len(), 6);
    for (row, case) in report.rows.iter().zip(&CASES) {
        let r = row.outcome.as_ref().unwrap();
        assert_eq!(r.min_solution, Some(case.min_solution));
        assert_eq!(r.cells.len(), 6);
        for c in &r.cells {
            assert_eq!(c.status, SearchStatus::Solved);
            assert_eq!(c.solution_length, Some(case.min_solution));
            assert_eq!(c.runs, 2);
        }
    }
    assert_eq!(report.to_csv().lines().count(), 1 + 36);
}

#[test]
fn persist_columns_generate_nothing_new_and_learning_is_ordered() {
    let report = run_matrix(&quick());
    for case in &CASES {
        for fd in [true, false] {
            let get = |learning| {
                report
                    .cell(
                        case.label,
                        CellConfig {
                            failure_detection: fd,
                            learning,
                        },
                    )
                    .unwrap()
                    .clone()
            };
            let (none, during, persist) = (get(Learning::None), get(Learning::During), get(Learning::Persist));
            assert_eq!(persist.mean_novel_states, 0.0);
            assert!(persist.mean_expansions <= during.mean_expansions);
            assert!(during.mean_expansions <= none.mean_expansions);
        }
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = run_matrix(&quick());
    let b = run_matrix(&quick());
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.to_table(), b.to_table());
}

#[test]
fn empty_case_list_gives_an_empty_report() {
    let mut m = quick();
    m.cases.clear();
    let report = run_matrix(&m);
    assert!(report.rows.is_empty());
    assert_eq!(report.to_csv().lines().count(), 1);
}

#[test]
fn a_bad_case_reports_an_error_row_and_the_rest_proceed() {
    let mut m = quick();
    m.cases.truncate(1);
    m.cases.push(BenchCase {
        label: "broken".into(),
        name: "Broken".into(),
        instance: Err("could not build".into()),
    });
    let report = run_matrix(&m);
    assert!(report.rows[0].outcome.is_ok());
    assert_eq!(report.rows[1].outcome, Err("could not build".into()));
    assert!(report.to_table().contains("error: could not build"));
}

#[test]
fn budget_exceeded_cells_are_labelled() {
    let mut m = quick();
    m.cases = vec![BenchCase::bundled(&CASES[2])];
    m.budget = 100;
    let report = run_matrix(&m);
    let c = report
        .cell(
            "f_9_17_to_5",
            CellConfig {
                failure_detection: false,
                learning: Learning::None,
            },
        )
        .unwrap();
    assert_eq!(c.status, SearchStatus::BudgetExceeded);
    assert_eq!(c.runs, 1);
    assert!(report.to_table().contains("budget-exceeded"));
}

#[test]
fn reference_numbers_are_labelled_as_not_comparable() {
    let table = run_matrix(&quick()).to_table();
    assert!(table.contains("NOT comparable"));
    assert_eq!(REFERENCE_STATES.len(), 5);
    assert!(table.contains("21.4M"));
}
