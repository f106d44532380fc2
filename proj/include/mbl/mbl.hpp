#ifndef MBL_MBL_HPP
#define MBL_MBL_HPP

#include <mbl/abel.hpp>
#include <mbl/annihilator.hpp>
#include <mbl/corpus.hpp>
#include <mbl/decomposition.hpp>
#include <mbl/fuchs.hpp>
#include <mbl/generating_series.hpp>
#include <mbl/json_io.hpp>
#include <mbl/moments.hpp>
#include <mbl/numeric_verify.hpp>
#include <mbl/parse.hpp>
#include <mbl/polynomial.hpp>
#include <mbl/rational.hpp>
#include <mbl/rational_function.hpp>
#include <mbl/resultant.hpp>

#endif
