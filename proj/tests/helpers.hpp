#pragma once

#include "matmeasure/matrix_measure.hpp"
#include "matmeasure/vector_function.hpp"

namespace matmeasure::testing {

// 2x2 measure on [-1,1]: density diag(1,0) on [-1,0] and diag(0,1) on [0,1].
// Total mass I, trace measure = Lebesgue on [-1,1].
inline MatrixMeasure split_diag_measure() {
    MatrixMeasure m(2);
    m.add_segment(-1.0, 0.0, ComplexMatrix::diagonal({1.0, 0.0}));
    m.add_segment(0.0, 1.0, ComplexMatrix::diagonal({0.0, 1.0}));
    return m;
}

// The companion witness: e2 on [-1,0], e1 on (0,1]. Pointwise nonzero
// everywhere yet aligned with the density kernels, so its seminorm is 0.
inline VectorFunction kernel_aligned_witness() {
    VectorFunction f(2);
    f.add_segment(-1.0, 0.0, {Poly{}, Poly{Complex(1.0)}});
    f.add_segment(0.0, 1.0, {Poly{Complex(1.0)}, Poly{}});
    f.set_value(0.0, {Complex(0.0), Complex(1.0)});
    return f;
}

// Segment [0,1] with identity density plus an atom at 2: the canonical mixed
// (absolutely continuous + singular) example.
inline MatrixMeasure mixed_measure(int d = 1) {
    MatrixMeasure m(d);
    m.add_segment(0.0, 1.0, ComplexMatrix::identity(d));
    m.add_atom(2.0, ComplexMatrix::identity(d));
    return m;
}

}  // namespace matmeasure::testing
