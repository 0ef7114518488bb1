mod common;

use common::seeded;
use opf_core::stream::{self, io, kfold_indices, split_indices, Dataset, Format, LoadOptions, SplitSpec};
use opf_core::Error;
use proptest::prelude::*;
use rand::Rng;

fn random_dataset(seed: u64, f32_exact: bool) -> Dataset {
    let mut rng = seeded(seed);
    let n = rng.random_range(1..60);
    let dim = rng.random_range(1..12);
    let classes = rng.random_range(1..=n.min(5)) as u32;
    let mut ids: Vec<u32> = (0..n as u32).map(|i| i * 3 + 7).collect();
    ids.reverse();
    let labels = common::labels(&mut rng, n, classes);
    let features = (0..n)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let v: f64 = rng.random_range(-1e3..1e3) * 10f64.powi(rng.random_range(-8..3));
                    if f32_exact {
                        v as f32 as f64
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    Dataset::new(ids, labels, features).unwrap()
}

fn reread(d: &Dataset, format: Format) -> Dataset {
    let bytes = io::to_bytes(d, format).unwrap();
    io::read(bytes.as_slice(), format, LoadOptions::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn text_formats_round_trip(seed in any::<u64>()) {
        let d = random_dataset(seed, false);
        for format in [Format::Txt, Format::Csv, Format::Json] {
            prop_assert_eq!(&reread(&d, format), &d);
        }
    }

    #[test]
    fn binary_round_trip_is_byte_exact(seed in any::<u64>()) {
        let d = random_dataset(seed, true);
        let opf = io::to_bytes(&d, Format::Opf).unwrap();
        let via_txt = reread(&io::read(opf.as_slice(), Format::Opf, LoadOptions::default()).unwrap(), Format::Txt);
        prop_assert_eq!(io::to_bytes(&via_txt, Format::Opf).unwrap(), opf);
    }

    #[test]
    fn splits_partition_rows(n in 4usize..200, fraction in 0.05f64..0.95, seed in any::<u64>(), stratified in any::<bool>()) {
        let labels: Vec<u32> = (0..n).map(|i| 1 + (i % 3) as u32).collect();
        let spec = SplitSpec { fraction, seed, stratified };
        match split_indices(&labels, &spec) {
            Ok((a, b)) => {
                prop_assert_eq!(a.len(), stream::first_side_size(fraction, n));
                let mut all: Vec<usize> = a.iter().chain(&b).copied().collect();
                all.sort_unstable();
                prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
                if stratified {
                    for class in 1..=3u32 {
                        let total = labels.iter().filter(|&&l| l == class).count() as f64;
                        let got = a.iter().filter(|&&i| labels[i] == class).count() as f64;
                        prop_assert!((got - total * a.len() as f64 / n as f64).abs() < 1.0 + 1e-9);
                    }
                }
                prop_assert_eq!(split_indices(&labels, &spec).unwrap(), (a, b));
            }
            Err(e) => prop_assert!(matches!(e, Error::Split(_))),
        }
    }

    #[test]
    fn folds_partition_rows(n in 2usize..100, k in 2usize..8, seed in any::<u64>()) {
        let labels: Vec<u32> = (0..n).map(|i| 1 + (i % 2) as u32).collect();
        match kfold_indices(&labels, k, seed, true) {
            Ok(folds) => {
                let mut all: Vec<usize> = folds.concat();
                all.sort_unstable();
                prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
                let sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
                prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
            }
            Err(_) => prop_assert!(k > n),
        }
    }
}

#[test]
fn files_and_conversion() {
    let dir = tempfile::tempdir().unwrap();
    let d = random_dataset(3, true);
    let txt = dir.path().join("d.txt");
    stream::save(&d, &txt, Format::Txt).unwrap();
    for format in Format::ALL {
        let out = dir.path().join(format!("c.{}", format.extension()));
        let report = stream::convert(&txt, &out, None, LoadOptions::default()).unwrap();
        assert_eq!(report.to, format);
        assert_eq!(report.samples, d.len());
        assert_eq!(stream::load(&out, None).unwrap(), d);
    }
    assert!(matches!(
        stream::convert(&txt, dir.path().join("c.bin"), None, LoadOptions::default()),
        Err(Error::Conversion(_))
    ));
}

#[test]
fn parse_errors_carry_locations() {
    let text = "0 1 0.5 0.5\n1 1 0.5 oops\n";
    match io::read(text.as_bytes(), Format::Txt, LoadOptions::default()) {
        Err(Error::Parse { location, .. }) => assert!(location.contains('2'), "{location}"),
        other => panic!("{other:?}"),
    }
    let strict = LoadOptions { strict: true };
    assert!(io::read("0 1 0.5\n\n1 2 0.7\n".as_bytes(), Format::Txt, strict).is_err());
    assert_eq!(io::read("0 1 0.5\n\n1 2 0.7\n".as_bytes(), Format::Txt, LoadOptions::default()).unwrap().len(), 2);
    let d = random_dataset(1, true);
    let opf = io::to_bytes(&d, Format::Opf).unwrap();
    assert!(matches!(
        io::read(&opf[..opf.len() - 2], Format::Opf, LoadOptions::default()),
        Err(Error::Parse { .. })
    ));
}
