#pragma once

#include "gbdual/cohomology.hpp"
#include "gbdual/cuntz.hpp"
#include "gbdual/ktheory.hpp"
#include "gbdual/special_category.hpp"
