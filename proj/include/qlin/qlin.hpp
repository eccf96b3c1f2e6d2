#pragma once

#include "qlin/bench.hpp"
#include "qlin/embed.hpp"
#include "qlin/error.hpp"
#include "qlin/fastalg.hpp"
#include "qlin/field.hpp"
#include "qlin/instance.hpp"
#include "qlin/interp.hpp"
#include "qlin/linmap.hpp"
#include "qlin/matrix.hpp"
#include "qlin/parallel.hpp"
#include "qlin/poly.hpp"
#include "qlin/recurrence.hpp"
#include "qlin/selftest.hpp"
