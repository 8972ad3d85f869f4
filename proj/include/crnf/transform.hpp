#pragma once

// The change-of-variables action of a formal map on a defining function:
// given v = Phi(z, zbar, u) and the map z* = z+f, w* = w+g, produces the
// defining function Phi* of the image surface, using
//   Phi*(z + f, zbar + conj f, u + Re g) = Phi + Im g(z, u + i Phi),
// with f and Re g evaluated at (z, u + i Phi).

#include <crnf/formal_map.hpp>
#include <crnf/series3.hpp>
#include <crnf/surface_ops.hpp>

namespace crnf {

template <class C>
Series3<C> transform_series(const Series3<C>& phi, const BasicFormalMap<C>& map) {
    require_same(phi.weighting(), map.weighting());
    require(map.preserves_graph_form(), Errc::IllFormedSurface,
            "map does not preserve the graph form (g needs no z-linear term and real g01)");
    const Weighting wt = phi.weighting();
    const int trunc = std::min(phi.trunc(), map.trunc());
    const Series3<C> phi_t = phi.truncated(trunc);

    const Series3<C> f_on = compose_on_surface(map.f().truncated(trunc), phi_t);
    const Series3<C> g_on = compose_on_surface(map.g().truncated(trunc), phi_t);

    Series3<C> z_inner = Series3<C>::monomial(wt, trunc, {1, 0, 0}, C(GaussianRational(rat(1))));
    z_inner += f_on;
    Series3<C> u_inner = Series3<C>::monomial(wt, trunc, {0, 0, 1}, C(GaussianRational(rat(1))));
    u_inner += real_part(g_on);
    const Series3<C> rhs = phi_t + imag_part(g_on);

    return implicit_solve(z_inner, u_inner, rhs);
}

}  // namespace crnf
