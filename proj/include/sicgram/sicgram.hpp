#pragma once

#include "sicgram/letter.hpp"
#include "sicgram/word.hpp"
#include "sicgram/count.hpp"
#include "sicgram/enumerate.hpp"
#include "sicgram/christoffel.hpp"
#include "sicgram/surface.hpp"
#include "sicgram/ray.hpp"
#include "sicgram/intersection.hpp"
#include "sicgram/histogram.hpp"
#include "sicgram/report.hpp"
#include "sicgram/checkpoint.hpp"
#include "sicgram/census.hpp"
#include "sicgram/svg.hpp"
