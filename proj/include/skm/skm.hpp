#pragma once

#include "skm/rational.hpp"
#include "skm/poly.hpp"
#include "skm/scalar.hpp"
#include "skm/cartan.hpp"
#include "skm/reflect.hpp"
#include "skm/io.hpp"
#include "skm/classify.hpp"
#include "skm/integrable.hpp"
