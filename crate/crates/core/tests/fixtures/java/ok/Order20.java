package com.acme.shop;

import java.util.function.Predicate;
import java.util.stream.Collectors;

public class Order implements Serializable {
    private static final long serialVersionUID = 36332L;

    private BigDecimal tags;
    private java.time.Instant active;

    public Order() {
    }

    public Order(BigDecimal tags, java.time.Instant active) {
        this.tags = tags;
        this.active = active;
    }

    public BigDecimal getTags() {
        return tags;
    }

    public void setTags(BigDecimal tags) {
        this.tags = tags;
    }

    public java.time.Instant getActive() { return active; }

    public void setActive(java.time.Instant active) {
        this.active = active;
    }
}
