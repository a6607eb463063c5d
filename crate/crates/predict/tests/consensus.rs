//! Consensus behavior on a real train/test split: averaging two model
//! families never does worse (in RMSE) than the weakest member.

mod common;

use predict::{
    consensus_predict, fit_gbdt, fit_mlp, rmse, FeatureMatrix, GbdtParams, MlpParams, ModelFile,
    RegressorModel,
};

#[test]
fn consensus_rmse_at_most_worst_member() {
    let (x, y) = common::linear_noise_dataset(500, 77);
    let (train_x, test_x) = x.split_at(375);
    let (train_y, test_y) = y.split_at(375);

    let tag = "tlfp-v1|test";
    let gbdt = fit_gbdt(train_x, train_y, &GbdtParams::default()).unwrap();
    let mlp_params = MlpParams {
        hidden: vec![32, 32],
        epochs: 200,
        batch_size: 32,
        learning_rate: 0.01,
        seed: 5,
    };
    let mlp = fit_mlp(train_x, train_y, &mlp_params).unwrap();

    let members = vec![
        ModelFile::new(RegressorModel::Gbdt(gbdt), tag, "hash"),
        ModelFile::new(RegressorModel::Mlp(mlp), tag, "hash"),
    ];
    let features = FeatureMatrix::new(tag, test_x.to_vec());

    let member_rmses: Vec<f64> = members
        .iter()
        .map(|m| rmse(&m.predict(&features).unwrap(), test_y).unwrap())
        .collect();
    let worst = member_rmses.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let blended = consensus_predict(&members, &features).unwrap();
    let blended_rmse = rmse(&blended, test_y).unwrap();
    println!(
        "member RMSEs {:?}, consensus RMSE {blended_rmse}",
        member_rmses
    );
    assert!(member_rmses.iter().all(|r| r.is_finite()));
    assert!(
        blended_rmse <= worst + 1e-12,
        "consensus {blended_rmse} vs worst member {worst}"
    );
}
