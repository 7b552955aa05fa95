#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace waymark::ad {

// Reverse-mode autodiff over dense double tensors. Graphs are built eagerly
// by the ops below and freed when the last Tensor handle drops. Everything is
// single-threaded and deterministic: same inputs, same op sequence, same bits.

struct TensorImpl {
  std::vector<int> shape;
  std::vector<double> val;
  std::vector<double> grad;  // sized on first use
  bool requires_grad = false;
  std::vector<std::shared_ptr<TensorImpl>> parents;
  std::function<void(TensorImpl&)> backward_fn;

  int size() const {
    int n = 1;
    for (int d : shape) n *= d;
    return n;
  }
  void ensure_grad() {
    if (grad.size() != val.size()) grad.assign(val.size(), 0.0);
  }
};

class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::shared_ptr<TensorImpl> impl) : impl_(std::move(impl)) {}

  static Tensor zeros(std::vector<int> shape, bool requires_grad = false);
  static Tensor full(std::vector<int> shape, double v, bool requires_grad = false);
  static Tensor from(std::vector<int> shape, std::vector<double> data,
                     bool requires_grad = false);
  static Tensor scalar(double v, bool requires_grad = false);  // shape [1,1]

  bool defined() const { return impl_ != nullptr; }
  const std::vector<int>& shape() const { return impl_->shape; }
  int size() const { return impl_->size(); }
  int dim(int i) const { return impl_->shape[i]; }
  int rank() const { return static_cast<int>(impl_->shape.size()); }

  std::span<const double> value() const { return impl_->val; }
  std::span<double> mutable_value() { return impl_->val; }
  std::span<const double> grad() const;
  double item() const;  // requires size()==1

  bool requires_grad() const { return impl_->requires_grad; }
  void set_requires_grad(bool b) { impl_->requires_grad = b; }
  void zero_grad() { impl_->grad.assign(impl_->val.size(), 0.0); }

  std::shared_ptr<TensorImpl> node() const { return impl_; }
  TensorImpl* raw() const { return impl_.get(); }

 private:
  std::shared_ptr<TensorImpl> impl_;
};

// Rigid 2D transform mapping input coordinates to output coordinates:
//   x_out = R(quarter_turns * 90deg + angle) * x_in + (tx, ty)
// Quarter turns are kept as an integer so axis-aligned warps stay exact.
struct RigidTransform {
  int quarter_turns = 0;
  double angle = 0.0;
  double tx = 0.0;
  double ty = 0.0;
};

// Disables graph construction while alive (forward-only evaluation).
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool prev_;
};
bool grad_enabled();

enum class Pad { Same, Valid };

// Elementwise / linear algebra
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor affine(const Tensor& x, double a, double b);  // a*x + b
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor dense(const Tensor& x, const Tensor& w, const Tensor& b);  // x*w + b per row

// Activations and reductions
Tensor relu(const Tensor& x);
Tensor sigmoid(const Tensor& x);
Tensor tanh_act(const Tensor& x);
Tensor softmax_rows(const Tensor& x);
Tensor sum(const Tensor& x);   // -> [1,1]
Tensor mean(const Tensor& x);  // -> [1,1]

// Losses (scalar outputs)
Tensor cross_entropy(const Tensor& logits, const std::vector<int>& labels);
Tensor bce_logits(const Tensor& logits, const Tensor& targets01);
Tensor mse(const Tensor& a, const Tensor& b);

// Structure
Tensor concat(std::span<const Tensor> parts, int axis);
Tensor rows(const Tensor& x, int start, int count);  // rank-2 row slice
Tensor reshape(const Tensor& x, std::vector<int> shape);
Tensor channels_at(const Tensor& x, int y, int xcol);  // [C,H,W] -> [1,C]

// Spatial ops on [C,H,W]
Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& b, int stride,
              Pad pad);
Tensor channel_max(const Tensor& x, int groups);
Tensor upsample2x(const Tensor& x);
Tensor bilinear_warp(const Tensor& x, const RigidTransform& t, int out_h,
                     int out_w);

// Set-style reductions. Accumulation is order-canonical (addends sorted by
// value before summing) so permuting the inputs reproduces identical bits.
Tensor weighted_sum(const Tensor& items, const Tensor& weights);  // [n,d],[1,n] -> [1,d]
Tensor confidence_weighted_average(std::span<const Tensor> maps, int feature_channels,
                                   double eps);  // list of [C+1,H,W] -> [C+1,H,W]

// exp(-|eta - j|) over j=1..n, optionally normalized to sum 1. eta is [1,1].
Tensor attention_weights(const Tensor& eta, int n, bool normalized);

// Standard GRU cell (update/reset/candidate), composed from primitives.
struct GruWeights {
  Tensor wz, uz, bz;
  Tensor wr, ur, br;
  Tensor wn, un, bn;
};
Tensor gru_cell(const Tensor& x, const Tensor& h, const GruWeights& g);

void backward(const Tensor& loss);

// Order-canonical sum of a scratch buffer (sorts in place).
double sorted_sum(std::span<double> addends);

std::string shape_str(const std::vector<int>& s);

}  // namespace waymark::ad
