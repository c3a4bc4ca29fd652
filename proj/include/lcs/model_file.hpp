#pragma once

#include "lcs/bulk.hpp"

#include <stdexcept>
#include <string>

#include "toml.hpp"

namespace lcs {

/* malformed input; the message carries "line L, column C" when a position is known */
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/* TOML documents; parse errors become InputError */
toml::table parse_document(const std::string& text);
toml::table read_document(const std::string& path);

/*
 * [coordinates]   transverse, leaf, fiber: arrays of names
 * [structure]     name, omega, b (strings), rank (integer)
 * [splitting]     <transverse>.<leaf> = R entry (optional, flat otherwise)
 * [omega_inverse] <transverse>.<transverse> = entry (optional)
 */
Model model_from_document(const toml::table& doc);
/* [section] gamma1, gamma2, ... */
FormalSeries series_from_document(const toml::table& doc, const RosterPtr& r);
/* [omegas] / [lee_forms] / [sections] with integer keys; order 0 comes from the model */
BulkSeries bulk_from_document(const toml::table& doc, const Model& m);

toml::table model_to_document(const Model& m);
toml::table series_to_document(const FormalSeries& g);
std::string model_to_text(const Model& m);
std::string series_to_text(const FormalSeries& g);

}  // namespace lcs
