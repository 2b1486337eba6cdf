#include "incdet/lambda.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace incdet {

LambdaOperator LambdaOperator::matrix_free(const DiscreteDomain& dom, const SpeedModel& speed,
                                           const SignalSpace& space) {
    LambdaOperator op;
    op.mode_ = Mode::MatrixFree;
    op.dom_ = dom;
    op.speed_ = speed;
    op.space_ = space;
    op.speed_hash_ = speed.content_hash(dom);
    return op;
}

LambdaOperator LambdaOperator::assemble(const DiscreteDomain& dom, const SpeedModel& speed,
                                        const SignalSpace& space, const SourceBasis& basis) {
    LambdaOperator op = matrix_free(dom, speed, space);
    op.mode_ = Mode::Precomputed;
    op.basis_ = basis;
    const int rows = space.nt * space.n_b();
    op.columns_.resize(rows, basis.n_elements());

    WaveRecord record;
    record.trace = true;
    VectorXd unit = VectorXd::Zero(basis.n_elements());
    for (int p = 0; p < basis.n_patch(); ++p) {
        unit.setZero();
        unit[basis.element_index(p, 0)] = 1.0;
        const MatrixXd f0 = basis.synthesize(space, unit);
        const MatrixXd trace0 = solve_wave(dom, speed, space, f0, record).trace;
        for (int q = 0; q < basis.n_bin(); ++q) {
            const int shift = q * basis.samples_per_bin();
            MatrixXd shifted = MatrixXd::Zero(space.nt, space.n_b());
            shifted.bottomRows(space.nt - shift) = trace0.topRows(space.nt - shift);
            op.columns_.col(basis.element_index(p, q)) = shifted.reshaped();
        }
    }
    return op;
}

MatrixXd LambdaOperator::apply(const MatrixXd& f) const {
    if (f.rows() != space_.nt || f.cols() != space_.n_b())
        throw config_error("lambda: source does not match the signal space");
    if (mode_ == Mode::MatrixFree) {
        WaveRecord record;
        record.trace = true;
        return solve_wave(dom_, speed_, space_, f, record).trace;
    }
    if (basis_.span_defect(space_, f) > 1e-12)
        throw config_error("lambda: precomputed mode needs sources in the basis span");
    const VectorXd coeffs = basis_.project(space_, f);
    const VectorXd flat = columns_ * coeffs;
    return flat.reshaped(space_.nt, space_.n_b());
}

void LambdaOperator::save(const std::string& path) const {
    if (mode_ != Mode::Precomputed)
        throw config_error("lambda: only the precomputed form can be stored");
    nlohmann::json header{{"nx", dom_.nx},
                          {"ny", dom_.ny},
                          {"Lx", dom_.Lx},
                          {"Ly", dom_.Ly},
                          {"nt", space_.nt},
                          {"dt", space_.dt},
                          {"T", space_.T},
                          {"cfl", space_.cfl},
                          {"n_patch", basis_.n_patch()},
                          {"n_bin", basis_.n_bin()},
                          {"speed_hash", speed_hash_},
                          {"rows", columns_.rows()},
                          {"cols", columns_.cols()},
                          {"layout", "float64 column-major"}};
    std::ofstream hf(path + ".json");
    if (!hf) throw config_error("lambda: cannot write " + path + ".json");
    hf << header.dump(2) << "\n";
    std::ofstream bf(path, std::ios::binary);
    if (!bf) throw config_error("lambda: cannot write " + path);
    bf.write(reinterpret_cast<const char*>(columns_.data()),
             static_cast<std::streamsize>(sizeof(double) * columns_.size()));
    if (!bf) throw config_error("lambda: short write to " + path);
}

LambdaOperator LambdaOperator::load(const std::string& path, const DiscreteDomain& dom,
                                    const SpeedModel& speed) {
    std::ifstream hf(path + ".json");
    if (!hf) throw config_error("lambda: cannot read " + path + ".json");
    nlohmann::json header = nlohmann::json::parse(hf);
    if (header.at("nx") != dom.nx || header.at("ny") != dom.ny)
        throw config_error("lambda: stored operator was built on a different grid");
    if (header.at("speed_hash") != speed.content_hash(dom))
        throw config_error("lambda: stored operator was built for a different speed model");

    SignalSpace space;
    space.nt = header.at("nt");
    space.dt = header.at("dt");
    space.T = header.at("T");
    space.cfl = header.at("cfl");
    space.boundary_weights = speed.boundary_metric_weights(dom);

    LambdaOperator op = matrix_free(dom, speed, space);
    op.mode_ = Mode::Precomputed;
    op.basis_ = SourceBasis(dom, space, header.at("n_patch"), header.at("n_bin"));
    const Index rows = header.at("rows"), cols = header.at("cols");
    if (rows != Index(space.nt) * space.n_b() || cols != op.basis_.n_elements())
        throw config_error("lambda: stored matrix shape is inconsistent");
    op.columns_.resize(rows, cols);
    std::ifstream bf(path, std::ios::binary);
    if (!bf) throw config_error("lambda: cannot read " + path);
    bf.read(reinterpret_cast<char*>(op.columns_.data()),
            static_cast<std::streamsize>(sizeof(double) * rows * cols));
    if (bf.gcount() != static_cast<std::streamsize>(sizeof(double) * rows * cols))
        throw config_error("lambda: short read from " + path);
    return op;
}

}  // namespace incdet
