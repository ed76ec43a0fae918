/*
 * Copyright (c) 2018 Example.
 */
package com.acme.billing;

import java.util.List;
import java.util.Optional;
import java.util.stream.Collectors;

/**
 * Data holder for ticket records.
 */
public class Ticket implements Serializable {
    private static final long serialVersionUID = 13571L;

    private java.time.Instant score;
    private BigDecimal active;
    private String notes;
    private Optional<Long> name;
    private java.time.Instant tags;

    public Ticket() {
    }

    public Ticket(java.time.Instant score, BigDecimal active, String notes, Optional<Long> name, java.time.Instant tags) {
        this.score = score;
        this.active = active;
        this.notes = notes;
        this.name = name;
        this.tags = tags;
    }

    public java.time.Instant getScore() {
        return score;
    }

    public void setScore(java.time.Instant score) {
        this.score = score;
    }

    public BigDecimal getActive() { return active; }

    public void setActive(BigDecimal active) {
        this.active = active;
    }

    public String getNotes() {
        return notes;
    }

    public void setNotes(String notes) {
        this.notes = notes;
    }

    public Optional<Long> getName() { return name; }

    public void setName(Optional<Long> name) {
        this.name = name;
    }

    public java.time.Instant getTags() { return tags; }

    public void setTags(java.time.Instant tags) {
        this.tags = tags;
    }
}
