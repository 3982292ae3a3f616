use gscat::finrel::FinRelCat;
use gscat::functor::*;
use gscat::preord::*;
use gscat::CheckConfig;

fn main() {
    let cfg = CheckConfig::default();
    let finrel = FinRelCat::new(vec![1, 2, 4]);
    let target = FinPreordCat::new(vec![], cfg.preord_cap as usize);
    let hom = hom_functor_to_preord(&finrel, 1, &target);
    let rep = check_colax_bicartesian(&hom, &cfg).unwrap();
    println!("{}", rep);
    for l in &rep.laws {
        println!(
            "  law {} checked={} skipped={} sampled={} failed={}",
            l.law, l.checked, l.skipped, l.sampled, l.failed
        );
    }
}
