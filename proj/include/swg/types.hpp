#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace swg {

/// Points and vectors are always stored with three components; 2D meshes keep z = 0.
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MeshError : public Error {
 public:
  using Error::Error;
};

class KernelError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace swg
