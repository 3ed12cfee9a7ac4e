mod common;

use buscode::bpdecode::ErasureWord;
use buscode::cac::{run_rank, run_unrank, RunCodebook};
use buscode::densevo::{de_step, p_poly, DeEnsemble, DeState};
use buscode::ira::{ira_encode, validate_checks, IraGraph};
use buscode::jointcode::{compare_rates, dmin_witness};
use buscode::simkit::{bec_transmit, run_trials, trial_rng};
use buscode::{
    bp_decode, cac_rate, check_transition, count_codewords, fib, free_wires, parse_runs, select_parity_wires, BusState,
    CacCodec, DecoderConfig, DegreeDistribution, FactorGraph, JointCode, SimConfig,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bus(max: usize) -> impl Strategy<Value = BusState> {
    prop::collection::vec(0u8..2, 1..=max).prop_map(|b| BusState::new(b).unwrap())
}

fn product_count(a: &BusState) -> BigUint {
    parse_runs(a).run_lengths.iter().map(|&d| fib(d + 2).unwrap()).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn runs_cover_and_alternate(a in bus(80)) {
        let r = parse_runs(&a);
        prop_assert_eq!(r.run_lengths.iter().sum::<usize>(), a.len());
        let b = a.bits();
        for run in r.runs() {
            for w in run.start + 1..run.end {
                prop_assert_ne!(b[w], b[w - 1]);
            }
            if run.start > 0 {
                prop_assert_eq!(b[run.start], b[run.start - 1]);
            }
        }
        prop_assert_eq!(&r.free_wires, &free_wires(&a));
        prop_assert_eq!(BusState::from_runs(b[0], &r.run_lengths).unwrap(), a);
    }

    #[test]
    fn violations_are_opposing(a in bus(40), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = BusState::new((0..a.len()).map(|_| rand::Rng::random_range(&mut rng, 0..2u8)).collect()).unwrap();
        let rep = check_transition(&a, &b).unwrap();
        prop_assert_eq!(rep.is_empty(), common::brute_valid(a.bits(), b.bits()));
        for &(n, m) in &rep.opposing_pairs {
            prop_assert_eq!(m, n + 1);
            prop_assert!(a.bit(n) != a.bit(m) && b.bit(n) == a.bit(m) && b.bit(m) == a.bit(n));
        }
    }

    #[test]
    fn count_is_fibonacci_product(a in bus(200)) {
        prop_assert_eq!(count_codewords(&a), product_count(&a));
        let r = cac_rate(&a);
        prop_assert!((0.5..=1.0).contains(&r));
    }

    #[test]
    fn run_rank_unrank(d in 1usize..=25, phase in 0u8..2, frac in 0.0f64..1.0) {
        let past: Vec<u8> = (0..d).map(|i| (i as u8 + phase) % 2).collect();
        let book = RunCodebook::new(&past).unwrap();
        prop_assert_eq!(book.codeword_count(), &fib(d + 2).unwrap());
        let total = fib(d + 2).unwrap();
        let idx = BigUint::from((frac * f64::from(u32::try_from(&total).unwrap_or(u32::MAX))) as u64) % &total;
        let w = run_unrank(&past, &idx).unwrap();
        prop_assert!(book.is_valid(&w));
        prop_assert_eq!(run_rank(&past, &w).unwrap(), idx);
    }

    #[test]
    fn codec_round_trip(a in bus(120), seed in any::<u64>()) {
        let codec = CacCodec::new(&a, &[]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u: Vec<u8> = (0..codec.info_len()).map(|_| rand::Rng::random_range(&mut rng, 0..2u8)).collect();
        let word: Vec<u8> = codec.encode(&u).unwrap().into_iter().map(Option::unwrap).collect();
        let b = BusState::new(word).unwrap();
        prop_assert!(check_transition(&a, &b).unwrap().is_empty());
        prop_assert_eq!(codec.decode_state(&b).unwrap(), u);
    }

    #[test]
    fn layout_partitions_wires(a in bus(100), frac in 0.0f64..0.5) {
        let p = (a.len() as f64 * frac) as usize;
        if let Ok(l) = select_parity_wires(&a, p) {
            prop_assert_eq!(l.num_parities(), p);
            let mut all: Vec<usize> = l.info_wires.iter().chain(&l.parity_wires).copied()
                .chain(l.shield_pairs.iter().flat_map(|s| [s.carrier, s.pinned])).collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..a.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn ira_is_linear_and_systematic(seed in any::<u64>(), k in 1usize..60, p in 1usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(k, p, &mut rng);
        let u: Vec<u8> = (0..k).map(|_| rand::Rng::random_range(&mut rng, 0..2u8)).collect();
        let v: Vec<u8> = (0..k).map(|_| rand::Rng::random_range(&mut rng, 0..2u8)).collect();
        let uv: Vec<u8> = u.iter().zip(&v).map(|(x, y)| x ^ y).collect();
        let (pu, pv, puv) = (ira_encode(&u, &g).unwrap(), ira_encode(&v, &g).unwrap(), ira_encode(&uv, &g).unwrap());
        prop_assert_eq!(puv, pu.iter().zip(&pv).map(|(x, y)| x ^ y).collect::<Vec<_>>());
        prop_assert!(validate_checks(&u, &pu, &g));
    }

    #[test]
    fn joint_codeword_is_valid(seed in any::<u64>(), n in 4usize..96) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = common::random_code(n, &mut rng);
        let u: Vec<u8> = (0..code.info_len()).map(|_| rand::Rng::random_range(&mut rng, 0..2u8)).collect();
        let cw = code.encode(&u).unwrap();
        prop_assert!(check_transition(code.past(), &cw.word).unwrap().is_empty());
        prop_assert!(code.is_ecc_codeword(&cw.word));
        let info: Vec<u8> = cw.info_wires.iter().map(|&w| cw.word.bit(w)).collect();
        prop_assert_eq!(code.decode(&cw.word).unwrap(), u);
        prop_assert_eq!(code.parity_bits(&cw.word), ira_encode(&info, code.graph()).unwrap());
    }

    #[test]
    fn witness_membership(seed in any::<u64>(), n in 4usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = buscode::simkit::gen_past_uniform(n, &mut rng).unwrap();
        let p = free_wires(&a).len().min(n / 4);
        let layout = select_parity_wires(&a, p).unwrap();
        let k = layout.info_wires.len();
        let code = JointCode::new(&a, layout, common::random_graph(k, p, &mut rng)).unwrap();
        let c0: Vec<u8> = (0..k).map(|_| rand::Rng::random_range(&mut rng, 0..2u8)).collect();
        prop_assume!(c0.contains(&1));
        let (c1, c2) = dmin_witness(&c0, &code).unwrap();
        let full = code.complete(&c0).unwrap();
        prop_assert!(code.is_cac_codeword(&c1) && code.is_cac_codeword(&c2));
        prop_assert!(code.is_ecc_codeword(&c1) && code.is_ecc_codeword(&c2));
        let x: Vec<u8> = c1.bits().iter().zip(c2.bits()).map(|(x, y)| x ^ y).collect();
        prop_assert_eq!(x, full.bits().to_vec());
    }

    #[test]
    fn embedded_rate_dominates(a in bus(256), r in 0.75f64..1.0) {
        if let Ok(c) = compare_rates(&a, r) {
            prop_assert!(c.margin >= -1e-12);
            prop_assert!(c.r_cac >= c.bound - 1e-12);
        }
    }

    #[test]
    fn decoder_is_sound(seed in any::<u64>(), n in 2usize..80, eps in 0.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = common::random_code(n, &mut rng);
        let word = code.sample_uniform(&mut rng);
        let rx = bec_transmit(&word, eps, &mut rng);
        let fg = FactorGraph::new(code);
        let res = bp_decode(&rx, &fg, &DecoderConfig::default()).unwrap();
        for ((d, r), &b) in res.word.symbols.iter().zip(&rx.symbols).zip(word.bits()) {
            prop_assert!(d.is_none_or(|x| x == b));
            if let Some(v) = r {
                prop_assert_eq!(*d, Some(*v));
            }
        }
        // Full-codebook words may index past the payload range.
        if res.info_bits.is_some() {
            prop_assert_eq!(res.residual_erasures, 0);
        }
    }

    #[test]
    fn payload_recovered_iff_no_residual(seed in any::<u64>(), n in 2usize..80, eps in 0.0f64..0.6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = common::random_code(n, &mut rng);
        let u: Vec<u8> = (0..code.info_len()).map(|_| rand::Rng::random_range(&mut rng, 0..2u8)).collect();
        let word = code.encode(&u).unwrap().word;
        let rx = bec_transmit(&word, eps, &mut rng);
        let fg = FactorGraph::new(code);
        let res = bp_decode(&rx, &fg, &DecoderConfig::default()).unwrap();
        if res.residual_erasures == 0 {
            prop_assert_eq!(res.info_bits, Some(u));
        } else {
            prop_assert!(res.info_bits.is_none());
        }
    }

    #[test]
    fn erasure_word_text_round_trip(s in "[01e]{1,64}") {
        let w: ErasureWord = s.parse().unwrap();
        prop_assert_eq!(w.to_string(), s);
    }

    #[test]
    fn de_components_nonincreasing(eps in 0.0f64..1.0) {
        let ens = DeEnsemble::new(DegreeDistribution::regular(3, 12).unwrap()).unwrap();
        let mut s = DeState::ALL_ERASED;
        for _ in 0..60 {
            let t = de_step(&s, eps, &ens);
            for (x, y) in [(s.x_ecc, t.x_ecc), (s.y_ecc, t.y_ecc), (s.x_p, t.x_p), (s.y_p, t.y_p), (s.x_cac, t.x_cac), (s.y_cac, t.y_cac)] {
                prop_assert!((0.0..=1.0).contains(&y));
                prop_assert!(y <= x + 1e-15);
            }
            s = t;
        }
    }

    #[test]
    fn x_p_closed_form_matches_iteration(eps in 0.0f64..0.99, x in 0.0f64..1.0) {
        let ens = DeEnsemble::new(DegreeDistribution::regular(3, 12).unwrap()).unwrap();
        prop_assert!((ens.x_p(eps, x) - ens.x_p_iterated(eps, x)).abs() < 1e-9);
    }

    #[test]
    fn p_poly_in_unit_interval(d in 1usize..=64, i in 1usize..=64, x in 0.0f64..=1.0) {
        prop_assume!(i <= d);
        let v = p_poly(d, i, x).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&v));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn trials_are_reproducible(seed in any::<u64>()) {
        let cfg = SimConfig::new(400, 0.2, DegreeDistribution::regular(3, 12).unwrap(), 20, seed);
        let a = run_trials(&cfg).unwrap();
        prop_assert_eq!(a, run_trials(&cfg).unwrap());
        prop_assert_eq!(a.decoder_mismatches, 0);
    }
}

#[test]
fn degree_perspectives_consistent() {
    let d = DegreeDistribution::from_node_fractions(vec![(2, 0.5), (3, 0.5)], vec![(10, 1.0)]).unwrap();
    assert!((d.lambda(1.0) - 1.0).abs() < 1e-12 && (d.rho(1.0) - 1.0).abs() < 1e-12);
    assert!((d.node_l(1.0) - 1.0).abs() < 1e-12 && (d.node_r(1.0) - 1.0).abs() < 1e-12);
    let lam = d.lambda_coeffs();
    let l_avg = d.l_avg();
    for (&(i, li), &(j, lj)) in d.l_coeffs().iter().zip(&lam) {
        assert_eq!(i, j);
        assert!((lj - i as f64 * li / l_avg).abs() < 1e-12);
    }
}

#[test]
fn constant_past_iff_everything_valid() {
    for a in common::all_states(8) {
        let all_ok = common::all_states(8).all(|b| check_transition(&a, &b).unwrap().is_empty());
        assert_eq!(all_ok, a.is_constant());
        assert_eq!(free_wires(&a).len() == 8, a.is_constant());
    }
}

#[test]
fn sampled_graph_sockets_balance() {
    let dist = DegreeDistribution::regular(3, 12).unwrap();
    let mut rng = trial_rng(5, 0);
    let g: IraGraph = buscode::ira::sample_graph(1200, 300, &dist, &mut rng).unwrap();
    assert_eq!(g.num_parity() * 4, g.num_info());
    let info_sockets: usize = (0..g.num_info()).map(|i| g.info_neighbors(i).len()).sum();
    let check_sockets: usize = (0..g.num_parity()).map(|j| g.check_neighbors(j).len()).sum();
    assert_eq!(info_sockets, check_sockets);
}
