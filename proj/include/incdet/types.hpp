#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace incdet {

/** Dense grid field, column index = x node/cell index, row-major in (ix, iy). */
template <class Scalar>
using Field = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using FieldXd = Field<double>;
using FieldXb = Field<bool>;
using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;
using Eigen::Index;

/// Invalid user input: bad configuration, bad arguments, malformed files.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure at runtime: CFL violation, NaN blowup, singular data.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace incdet
