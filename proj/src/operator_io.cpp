#include "qnc/operator_io.hpp"

#include <fstream>

namespace qnc {

using nlohmann::json;

json operator_to_json(const LocalOperator& f) {
    json j;
    j["lattice"] = {{"d", f.lattice().dimension}, {"n", f.lattice().site_dim}};
    json sup = json::array();
    for (const auto& s : f.support().sites()) sup.push_back(s);
    j["support"] = sup;
    json rows = json::array();
    for (Eigen::Index r = 0; r < f.dim(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < f.dim(); ++c) {
            const Complex v = f.matrix()(r, c);
            row.push_back({v.real(), v.imag()});
        }
        rows.push_back(row);
    }
    j["matrix"] = rows;
    return j;
}

LocalOperator operator_from_json(const json& j) {
    if (!j.is_object() || !j.contains("lattice") || !j.contains("support") || !j.contains("matrix"))
        throw std::invalid_argument("operator document needs lattice, support and matrix fields");
    const Lattice lat(j.at("lattice").at("d").get<int>(), j.at("lattice").at("n").get<int>());
    std::vector<Site> sites;
    for (const auto& s : j.at("support")) sites.push_back(s.get<Site>());
    Region support(std::move(sites));

    const Eigen::Index dim = hilbert_dim(lat, support);
    const auto& rows = j.at("matrix");
    if (static_cast<Eigen::Index>(rows.size()) != dim)
        throw std::invalid_argument("operator matrix has " + std::to_string(rows.size()) +
                                    " rows, expected " + std::to_string(dim));
    Matrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const auto& row = rows.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != dim)
            throw std::invalid_argument("operator matrix row " + std::to_string(r) +
                                        " has wrong length");
        for (Eigen::Index c = 0; c < dim; ++c) {
            const auto& entry = row.at(static_cast<std::size_t>(c));
            if (!entry.is_array() || entry.size() != 2)
                throw std::invalid_argument("matrix entries must be [re, im] pairs");
            m(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
    }
    return LocalOperator(lat, std::move(support), std::move(m));
}

void save_operator(const LocalOperator& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << operator_to_json(f).dump(2) << "\n";
}

LocalOperator load_operator(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return operator_from_json(j);
}

} // namespace qnc
