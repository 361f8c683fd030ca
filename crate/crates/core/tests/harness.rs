use fg_explore::algorithms::AlgorithmId;
use fg_explore::harness::{read_csv, run_campaign, summarize, write_csv, CsvRow, ExperimentFile, CSV_HEADER};

const CONFIG: &str = r#"
[[campaign]]
name = "star"
graph = "loopy-star"
k = 4
p = 0.2
q = 0.25
r = 0.25
means = "best-1-rest-0.5"
algorithms = ["exp3g", "tas-fg-heur"]
deltas = [0.1, 0.01]
seed_start = 3
seed_count = 4
"#;

fn csv_bytes(text: &str, workers: usize) -> Vec<u8> {
    let campaign = ExperimentFile::parse(text).unwrap().campaign[0].resolve().unwrap();
    let records = run_campaign(&campaign, workers).unwrap();
    let mut out = Vec::new();
    write_csv(&records, &mut out).unwrap();
    out
}

#[test]
fn output_is_independent_of_worker_count() {
    let one = csv_bytes(CONFIG, 1);
    assert_eq!(one, csv_bytes(CONFIG, 1));
    assert_eq!(one, csv_bytes(CONFIG, 3));
}

#[test]
fn rows_are_in_canonical_order_and_round_trip() {
    let bytes = csv_bytes(CONFIG, 2);
    let rows = read_csv(bytes.as_slice()).unwrap();
    assert_eq!(rows.len(), 2 * 2 * 4);
    let keys: Vec<(AlgorithmId, f64, u64)> = rows.iter().map(|r| (r.algorithm, r.delta, r.seed)).collect();
    assert_eq!(keys[0], (AlgorithmId::Exp3G, 0.1, 3));
    assert_eq!(keys[4], (AlgorithmId::Exp3G, 0.01, 3));
    assert_eq!(keys[8], (AlgorithmId::TasFgHeur, 0.1, 3));
    // Serializing the parsed rows reproduces the file byte for byte.
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_HEADER).unwrap();
    for r in &rows {
        w.serialize(r).unwrap();
    }
    assert_eq!(w.into_inner().unwrap(), bytes);

    let cells = summarize(&rows);
    assert_eq!(cells.len(), 4);
    assert!(cells.iter().all(|c| c.count == 4 && c.tau.q1 <= c.tau.median && c.tau.median <= c.tau.q3));
}

#[test]
fn empty_algorithm_list_writes_header_only() {
    let text = CONFIG.replace(r#"algorithms = ["exp3g", "tas-fg-heur"]"#, "algorithms = []");
    let bytes = csv_bytes(&text, 2);
    assert_eq!(String::from_utf8(bytes.clone()).unwrap(), format!("{}\n", CSV_HEADER.join(",")));
    assert!(read_csv(bytes.as_slice()).unwrap().is_empty());
}

#[test]
fn rejects_foreign_csv() {
    assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
    let row: CsvRow = csv::Reader::from_reader(
        "seed,algorithm,delta,tau,correct,a_hat,t_star,normalized,threshold_kind,truncated\n\
         1,ucb-fg-v,0.1,40,false,2,3.5,1.25,theoretical,true\n"
            .as_bytes(),
    )
    .deserialize()
    .next()
    .unwrap()
    .unwrap();
    assert_eq!(row.algorithm, AlgorithmId::UcbFgV);
    assert!(row.truncated && !row.correct);
}

#[test]
fn unidentifiable_campaigns_are_config_errors() {
    let text = CONFIG.replace("k = 4", "k = 4\nfamily = \"bernoulli\"");
    let err = ExperimentFile::parse(&text).unwrap().campaign[0].resolve().unwrap_err();
    assert!(err.to_string().contains("star"), "{err}");
}
