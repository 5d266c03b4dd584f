use multicox_web::{basis_json, info_json, lines_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn info_for_page() {
    let v = parse(info_json("B2").unwrap());
    assert_eq!(v["order"], 8);
    assert!(info_json("Z9").is_err());
}

#[test]
fn basis_for_page() {
    let v = parse(basis_json("A2", &[1], 1).unwrap());
    assert_eq!(v["certificate"]["verdict"], "Free-with-basis");
    assert_eq!(v["certificate"]["degree_sum"], 9);
    assert!(basis_json("A2", &[2], 1).is_err());
}

#[test]
fn lines_are_unit_and_spread() {
    for (t, m) in [("A2", 3u32), ("B2", 4), ("G2", 6), ("I2(5)", 5), ("I2(8)", 8)] {
        let v = parse(lines_json(t).unwrap());
        let lines = v["lines"].as_array().unwrap();
        assert_eq!(lines.len(), m as usize);
        let mut angles: Vec<f64> = lines
            .iter()
            .map(|l| {
                let d = l["dir"].as_array().unwrap();
                let (x, y) = (d[0].as_f64().unwrap(), d[1].as_f64().unwrap());
                assert!((x.hypot(y) - 1.0).abs() < 1e-9);
                y.atan2(x).rem_euclid(std::f64::consts::PI)
            })
            .collect();
        angles.sort_by(f64::total_cmp);
        // Reflecting lines of a dihedral group are equally spaced.
        let step = std::f64::consts::PI / m as f64;
        for w in angles.windows(2) {
            assert!((w[1] - w[0] - step).abs() < 1e-9, "{t}: {angles:?}");
        }
    }
    assert!(lines_json("A3").is_err());
}
