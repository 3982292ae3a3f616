use gscat::checks::*;
use gscat::finrel::FinRelCat;
use gscat::functor::*;
use gscat::kleisli::*;
use gscat::monad::MonadSpec;
use gscat::preord::*;
use gscat::span::*;
use gscat::stoch::check_support_oplax;
use gscat::suite::*;
use gscat::termgraph::*;
use gscat::CheckConfig;
use std::time::Instant;

fn t<F: FnOnce() -> gscat::LawReport>(name: &str, f: F) {
    let t0 = Instant::now();
    let rep = f();
    eprintln!("{:50} {:?} pass={}", name, t0.elapsed(), rep.passed());
}

fn main() {
    let cfg = CheckConfig::default();
    let finrel = FinRelCat::new(vec![1, 2, 4]);
    t("finrel cat+mon", || check_category_and_monoidal(&finrel, &cfg));
    t("finrel gs", || check_gs_axioms(&finrel, &cfg));
    t("finrel oplax", || check_oplax_cartesian(&finrel, &cfg).unwrap());
    let finrel3 = FinRelCat::new(vec![1, 2, 3]);
    t("finrel dom", || check_dom_propositions(&finrel3, &cfg));
    let fs = FinRelCat::new(vec![1, 2]);
    t("finrel weakprod", || check_weak_product(&fs, &2, &2, &cfg).unwrap());
    t("finrel genorder", || check_generated_order(&fs, false, &cfg).unwrap());
    for monad in gscat::monad::builtin_monads() {
        t(&format!("monad laws {}", monad.name()), || gscat::monad::check_monad_laws(&monad, 3, &cfg));
    }
    for monad in [MonadSpec::identity(), MonadSpec::powerset(), MonadSpec::nonempty_powerset(), MonadSpec::lifting()] {
        let kl = KleisliCat::new(monad, vec![1, 2, 3]);
        t(&format!("kleisli gs {}", monad.name()), || check_gs_axioms(&kl, &cfg));
        let kl2 = KleisliCat::new(monad, vec![1, 2]);
        t(&format!("kleisli oplax {}", monad.name()), || check_oplax_cartesian(&kl2, &cfg).unwrap());
    }
    t("powerset=finrel", || check_powerset_kleisli_matches_finrel(&[1, 2, 4], &cfg));
    t("subcats", || check_kleisli_subcategories(&[1, 2, 4], &cfg));
    {
        let base = FinPreordCat::discrete_sizes(&[1, 2], cfg.preord_cap as usize);
        let kl = KleisliCat::new(MonadSpec::powerset(), vec![1, 2]);
        let f_t = kleisli_f_t(&base, &kl);
        t("F_T strict", || check_gs_functor(&f_t, GsFlavor::Strict, &cfg).unwrap());
        let ob = FinPreordCat::new(vec![], cfg.preord_cap as usize);
        let g_t = kleisli_g_t(&kl, &ob);
        t("G_T laxmon", || check_lax_monoidal(&g_t, &cfg).unwrap());
        t("G_T colax", || check_colax_cartesian(&g_t, &cfg).unwrap());
    }
    let pspan = PSpanCat::new(vec![1, 2, 4], cfg.span_apex_bound);
    t("pspan cat+mon", || check_category_and_monoidal(&pspan, &cfg));
    t("pspan gs", || check_gs_axioms(&pspan, &cfg));
    t("pspan oplax", || check_oplax_cartesian(&pspan, &cfg).unwrap());
    t("pspan order agree", || check_span_order_agreement(&pspan, &cfg));
    t("pspan weak preds", || check_span_weak_predicates(&pspan, &cfg));
    t("stoch", || check_support_oplax(&[1, 2, 3], &cfg));
    t("hypograph funct", || check_hypograph_functoriality(&cfg));
    {
        let target = FinPreordCat::new(vec![], cfg.preord_cap as usize);
        for a in [1usize, 2, 4] {
            let hom = hom_functor_to_preord(&finrel, a, &target);
            t(&format!("hom({},-) colax cart", a), || check_colax_cartesian(&hom, &cfg).unwrap());
            t(&format!("hom({},-) bilax", a), || check_bilax(&hom, &cfg).unwrap());
        }
        let hom2 = hom_functor_to_preord(&finrel, 2, &target);
        let rel_target = FinRelCat::new(vec![1]);
        let r = hypograph_functor(&target, &rel_target);
        let comp = compose_functors(&r, &hom2);
        let small = CheckConfig { group_budget: 256, ..cfg.clone() };
        t("R∘hom(2,-) laxonid", || check_lax_on_identities(&comp, &small).unwrap());
        let pairs = finrel_hom_pairs(&[(1, 2), (2, 2)]);
        t("completeness", || completeness_experiment(&finrel, &pairs, &cfg));
    }
    t("tg axioms", || check_termgraph_axioms(500, &cfg));
    t("tg eval", || check_termgraph_eval(500, &cfg));
}
