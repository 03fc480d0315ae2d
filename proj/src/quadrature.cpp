#include "foldquad/quadrature.hpp"

#include "foldquad/parallel.hpp"

namespace foldquad {

namespace {

template <class D, class F>
double integrate_all(const D& d, const F& f, int n, int jobs)
{
    std::vector<double> parts(d.size());
    parallel_for(d.size(), [&](std::size_t i) { parts[i] = integrate_cell(d.cells[i], f, n); }, jobs);
    CompensatedSum s;
    for (double p : parts) s.add(p);
    return s.value();
}

template <class D>
QuadratureTable flatten(const std::vector<std::pair<long, D>>& elements, int n, int dim)
{
    QuadratureTable t;
    t.dim = dim;
    for (const auto& [id, d] : elements) {
        for (std::size_t c = 0; c < d.size(); ++c) {
            for_each_quadrature_point(d.cells[c], n, [&](const auto& x, double w) {
                QuadratureEntry e;
                e.element_id = id;
                e.cell_id = static_cast<int>(c);
                for (int k = 0; k < dim; ++k) e.x[static_cast<std::size_t>(k)] = x[k];
                e.weight = w;
                t.entries.push_back(e);
            });
        }
    }
    return t;
}

} // namespace

double integrate_decomposition(const Decomposition2D& d, const Field2& f, int n, int jobs)
{
    return integrate_all(d, f, n, jobs);
}

double integrate_decomposition(const Decomposition3D& d, const Field3& f, int n, int jobs)
{
    return integrate_all(d, f, n, jobs);
}

double QuadratureTable::weight_sum() const
{
    CompensatedSum s;
    for (const auto& e : entries) s.add(e.weight);
    return s.value();
}

double QuadratureTable::apply(const std::function<double(const std::array<double, 3>&)>& f) const
{
    CompensatedSum s;
    for (const auto& e : entries) s.add(f(e.x) * e.weight);
    return s.value();
}

QuadratureTable export_table(const std::vector<std::pair<long, Decomposition2D>>& elements, int n)
{
    return flatten(elements, n, 2);
}

QuadratureTable export_table(const std::vector<std::pair<long, Decomposition3D>>& elements, int n)
{
    return flatten(elements, n, 3);
}

} // namespace foldquad
